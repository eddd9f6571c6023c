#pragma once

// Words over lettered generators: "a^2", "(ab^2)^4", "(ab)^3*a^-2".
// Juxtaposition and '*' both multiply; exponents may be negative.  Products
// act on the right, so "ab" means apply a, then b.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctfuse/groupcore/perm.hpp"

namespace ctfuse::groupcore {

  // Free-group word as (generator index, +1/-1) letters, freely reduced.
  using Word = std::vector<std::pair<std::size_t, int>>;

  // Letters are looked up in `alphabet` ("ab" makes a=0, b=1).  Malformed
  // input raises ParseError.
  Word parse_word(std::string_view s, std::string_view alphabet = "ab");

  // "a^2 = b^19 = (ab^2)^4 = 1" gives one relator per side when the chain
  // ends in 1, otherwise u v^-1 for each adjacent pair.
  std::vector<Word> parse_relations(std::string_view s, std::string_view alphabet = "ab");

  Perm evaluate(Word const& w, std::vector<Perm> const& gens);

  struct RelatorCheck {
    bool                       ok = true;
    std::optional<std::size_t> first_failure;
  };

  RelatorCheck check_relators(std::vector<Perm> const& gens, std::vector<Word> const& relators);

  // Relators need only evaluate into `allowed` (e.g. a central subgroup).
  RelatorCheck check_relators_modulo(std::vector<Perm> const& gens,
                                     std::vector<Word> const& relators,
                                     std::vector<Perm> const& allowed);

}  // namespace ctfuse::groupcore
