#pragma once

// Class fusion search.  A fusion is accepted when it
//   * preserves element orders,
//   * sends each class to a class whose centralizer order is a multiple,
//   * commutes with every prime power map of the subgroup table, and
//   * restricts every tested ambient irreducible to a character, i.e. all
//     multiplicities <chi o f, psi> are non-negative rational integers.
// No other heuristics are applied.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctfuse/chartab.hpp"
#include "ctfuse/error.hpp"

namespace ctfuse {

  // f[c] = ambient class containing subgroup class c.
  using FusionMap = std::vector<std::size_t>;

  // Per subgroup class, the sorted ambient classes still possible.
  using CandidateSets = std::vector<std::vector<std::size_t>>;

  CandidateSets init_candidates(CharacterTable const& sub, CharacterTable const& amb);

  // Power-map arc consistency to a fixed point.  Throws NoFusionPossible when
  // some set becomes empty.
  CandidateSets propagate(CandidateSets c, CharacterTable const& sub, CharacterTable const& amb);

  // Setwise intersection, class by class.
  CandidateSets intersect(CandidateSets const& a, CandidateSets const& b);

  struct FusionOptions {
    // Ambient irreducibles used in the decomposition test; all when empty.
    std::vector<std::size_t> ambient_characters;
    // Abort after this many search nodes; 0 means no limit.
    std::uint64_t max_nodes = 0;
    // Interval pruning with rational characters before they are determined.
    bool partial_sum_bounds = true;
  };

  struct SearchStats {
    std::uint64_t nodes                = 0;
    std::uint64_t leaves               = 0;
    std::uint64_t propagation_failures = 0;
    std::uint64_t decomposition_prunes = 0;
    std::uint64_t bound_prunes         = 0;
  };

  class SearchAborted : public ResourceError {
   public:
    SearchAborted(SearchStats stats, std::vector<FusionMap> partial)
        : ResourceError("fusion search aborted after "
                        + std::to_string(stats.nodes) + " nodes"),
          stats(stats),
          partial(std::move(partial)) {}

    SearchStats            stats;
    std::vector<FusionMap> partial;
  };

  struct SearchResult {
    std::vector<FusionMap> maps;  // sorted lexicographically
    SearchStats            stats;
  };

  SearchResult search(CharacterTable const& sub,
                      CharacterTable const& amb,
                      CandidateSets const&  candidates,
                      FusionOptions const&  opts = {});

  // init_candidates + propagate + search.
  SearchResult possible_class_fusions(CharacterTable const& sub,
                                      CharacterTable const& amb,
                                      FusionOptions const&  opts = {});

  struct DecompositionWitness {
    std::size_t ambient_character;
    std::size_t subgroup_character;
    Cyclotomic  value;  // the offending multiplicity (times |S| when not integral)
    bool        integral;
  };

  struct DecompositionResult {
    bool                                ok = true;
    std::optional<DecompositionWitness> witness;
  };

  ClassFunction restrict_character(ClassFunction const& chi, FusionMap const& f);

  // Empty `characters` means every ambient irreducible.
  DecompositionResult decomposition_test(FusionMap const&                f,
                                         CharacterTable const&           sub,
                                         CharacterTable const&           amb,
                                         std::vector<std::size_t> const& characters = {});

  bool commutes_with_power_maps(FusionMap const&      f,
                                CharacterTable const& sub,
                                CharacterTable const& amb);

  // {"sub", "amb", "maps": [[...], ...], "count"}
  nlohmann::json         fusion_result_json(CharacterTable const&         sub,
                                            CharacterTable const&         amb,
                                            std::vector<FusionMap> const& maps);
  std::vector<FusionMap> fusion_maps_from_json(nlohmann::json const& j);

  // One line per ambient class hit, subgroup classes grouped by image:
  // "2bc → 2B".  Groups are ordered by their first subgroup class.
  std::vector<std::string> render_fusion(CharacterTable const& sub,
                                         CharacterTable const& amb,
                                         FusionMap const&      f);

}  // namespace ctfuse
