#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctfuse/chartab.hpp"
#include "ctfuse/groupcore/builders.hpp"
#include "ctfuse/groupcore/perm_group.hpp"
#include "ctfuse/groupcore/words.hpp"

namespace ctfuse::groupcore {

  // Relations checked on the models.
  inline constexpr char const* psl2_11_relations  = "a^2 = b^11 = (ba)^3 = (b^2ab^6a)^3 = 1";
  inline constexpr char const* pgl2_19_relations  = "a^2 = b^19 = (ab^2)^4 = (abab^2)^3 = 1";
  inline constexpr char const* sl2_7_relations    = "(ab)^3a^-2 = (ab^4ab^4)^2b^7a^4 = 1";
  inline constexpr char const* a5_relations       = "a^2 = b^3 = (ab)^5 = 1";
  inline constexpr char const* dihedral_relations = "a^2 = b^2 = (ab)^5 = 1";

  struct ModelSpec {
    std::string   id;        // also the table fixture id
    std::uint64_t expected_order;
    std::string   description;
  };

  // The four subgroup models, in a fixed order.
  std::vector<ModelSpec> const& model_specs();
  ModelSpec const&              model_spec(std::string const& id);

  // Builds "l2_11_sq4", "sylow11", "7b_pure", "pgl2_19", or the 12-point
  // "l2_11".  Throws PreconditionError for other ids.
  PermGroup build_model(std::string const& id);

  // Linear part of the 11^2 model: x4 of order 4 and x3 of order 3 generating
  // 2A5 inside SL2(11), and the scalar x5 = 3 of order 5.
  struct Sylow11Linear {
    Mat2 x3, x4, x5;
  };
  Sylow11Linear sylow11_linear();

  // First element a of g, in enumeration order, with gens {a, b} satisfying
  // the relators and generating all of g.
  std::optional<Perm> find_presentation_partner(PermGroup&                               g,
                                                Perm const&                              b,
                                                std::vector<Word> const&                 relators,
                                                std::function<bool(Perm const&)> const& filter = {});

  struct CheckResult {
    std::string name;
    bool        ok = false;
    std::string detail;
  };

  struct ModelReport {
    std::string              id;
    std::vector<CheckResult> checks;

    bool ok() const {
      for (auto const& c : checks) {
        if (!c.ok) {
          return false;
        }
      }
      return true;
    }
  };

  // Order, class multiset and labels against the table, plus the
  // model-specific structural checks.
  ModelReport verify_model(std::string const& id, CharacterTable const& table);

  // Subgroup/group pairs for the fusion oracle, with their table ids.
  struct OraclePair {
    std::string sub_table;
    std::string amb_table;
    PermGroup   sub;
    PermGroup   amb;
  };
  // A5 <= S5, S4 <= S5, A4 <= A5, S3 <= S4, 7^2 <= 7^2:SL2(7).
  std::vector<OraclePair> oracle_pairs();

  CheckResult check_psl2_11_presentation();
  CheckResult check_pgl2_19_presentation(PermGroup& g);
  CheckResult check_type_b_a5(PermGroup& g);
  CheckResult check_sl2_7_presentation(PermGroup& g);
  CheckResult check_order7_class_count(PermGroup& g);
  CheckResult check_representative_set(PermGroup& g);
  CheckResult check_normal_7_squared_pure(PermGroup& g);
  std::vector<CheckResult> check_sylow11_structure();

}  // namespace ctfuse::groupcore
