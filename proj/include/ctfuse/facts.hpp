#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctfuse/chartab.hpp"
#include "ctfuse/fusion.hpp"
#include "json.hpp"

namespace ctfuse {

  enum class FactSource { paper_fixture, bridge_computed };

  std::string fact_source_name(FactSource s);

  // An identification statement about one element of a subgroup: its order,
  // the value of the ambient distinguished character, and the classes of
  // some of its powers.
  struct FusionFact {
    std::string                                    label;  // "x20 = x11*x2*x4"
    std::uint32_t                                  element_order = 1;
    std::optional<Cyclotomic>                      chi;
    std::vector<std::pair<std::int64_t, std::string>> powers;
    FactSource                                     source = FactSource::paper_fixture;
    // Subgroup class the element lies in.  Without it the fact only says that
    // the subgroup meets the identified ambient classes.
    std::optional<std::string> subgroup_class;

    // Text before " = ", e.g. "x30^3".
    std::string name() const;
  };

  // Ambient classes consistent with the fact.  Throws InconsistentFact when
  // there are none, PreconditionError when chi is given but the table has no
  // distinguished character, FormatError on unknown class labels.
  std::vector<std::size_t> identify_class(CharacterTable const& amb, FusionFact const& f);

  // Keeps the maps satisfying every fact.  A fact with a subgroup class
  // requires f[class] in identify_class(fact); one without requires some
  // subgroup class to land there.  Throws InconsistentFact if maps was
  // non-empty and nothing survives.
  std::vector<FusionMap> apply_facts(std::vector<FusionMap> const&  maps,
                                     CharacterTable const&          sub,
                                     CharacterTable const&          amb,
                                     std::vector<FusionFact> const& facts);

  // A fact "y^k = ..." about the power of an element y that has its own fact
  // becomes a power constraint (k, class) on y, once it identifies a single
  // class.  Facts are returned in input order.
  std::vector<FusionFact> chain_power_facts(CharacterTable const&          amb,
                                            std::vector<FusionFact> const& facts);

  // For a fact pinned to subgroup class c and identified with a single
  // rational ambient class x, every class c^k with k coprime to the order
  // must also fuse to x.  Returns those derived facts (c itself excluded).
  std::vector<FusionFact> expand_rational(CharacterTable const& sub,
                                          CharacterTable const& amb,
                                          FusionFact const&     f);

  struct ClassSetConclusion {
    std::vector<std::size_t>   classes;     // ascending class indices, 1A included
    std::vector<std::uint32_t> unresolved;  // element orders with several candidates
  };

  // Classes met by a subgroup whose elements are all powers of elements in
  // the seed classes, together with any further element orders in `orders`
  // that are forced by the power maps: a class of order o is added when it is
  // the only one of that order whose prime powers all lie in the set so far.
  // Throws InconsistentFact when an order has no candidate at all.
  ClassSetConclusion closure_deduction(CharacterTable const&             amb,
                                       std::vector<std::size_t> const&   seeds,
                                       std::vector<std::uint32_t> const& orders = {});

  std::vector<std::string> class_labels(CharacterTable const&           t,
                                        std::vector<std::size_t> const& classes);

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::json          to_json(FusionFact const& f);
  FusionFact              fact_from_json(nlohmann::json const& j);
  nlohmann::json          facts_to_json(std::vector<FusionFact> const& facts);
  std::vector<FusionFact> facts_from_json(nlohmann::json const& j);
  std::vector<FusionFact> load_facts(std::filesystem::path const& path);
  void save_facts(std::vector<FusionFact> const& facts, std::filesystem::path const& path);

  // Field-level differences keyed by label; the source tag is ignored.
  // Empty when the files agree.
  std::vector<std::string> facts_diff(std::vector<FusionFact> const& a,
                                      std::vector<FusionFact> const& b);

}  // namespace ctfuse
