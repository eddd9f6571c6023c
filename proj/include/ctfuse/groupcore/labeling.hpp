#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctfuse/chartab.hpp"
#include "ctfuse/fusion.hpp"
#include "ctfuse/groupcore/perm_group.hpp"

namespace ctfuse::groupcore {

  // Model classes matched to table classes by (element order, class size) and
  // then refined by the classes of prime powers until stable.  Classes that
  // stay indistinguishable are reported, never resolved arbitrarily.
  struct Labeling {
    // Per model class, the table classes it may correspond to.
    std::vector<std::vector<std::size_t>> candidates;
    // Every fingerprint occurs equally often on both sides.
    bool matches = false;
    // Groups of table classes left indistinguishable (size >= 2).
    std::vector<std::vector<std::size_t>> ambiguous;
    std::vector<std::string>              mismatches;
    // Final fingerprint ids; equal ids mean indistinguishable.
    std::vector<std::size_t> model_color;
    std::vector<std::size_t> table_color;

    bool unique() const {
      return matches && ambiguous.empty();
    }
  };

  Labeling label_classes(PermGroup& g, CharacterTable const& t);

  // (element order, class size) multisets agree.
  bool class_multiset_matches(PermGroup& g, CharacterTable const& t, std::string* detail = nullptr);

  // Whether some choice of labels inside the ambiguity groups turns the
  // model-level oracle map into `f` (table indices).  `oracle[s]` is the
  // ambient model class of subgroup model class s.
  bool oracle_agrees(std::vector<std::size_t> const& oracle,
                     Labeling const&                 sub_labels,
                     Labeling const&                 amb_labels,
                     FusionMap const&                f);

  // Per subgroup table class, the ambient table classes some labeling could
  // send it to under the oracle.  Every map accepted by oracle_agrees lies in
  // the product of these sets.
  CandidateSets oracle_candidates(std::vector<std::size_t> const& oracle,
                                  Labeling const&                 sub_labels,
                                  Labeling const&                 amb_labels);

}  // namespace ctfuse::groupcore
