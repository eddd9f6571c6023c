#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ctfuse/cyclo.hpp"
#include "json.hpp"

namespace ctfuse {

  using ClassFunction = std::vector<Cyclotomic>;

  struct ClassInfo {
    std::string   name;  // Atlas-style label, metadata only
    std::uint32_t element_order = 1;
    mpz_class     size;
    mpz_class     centralizer_order;
  };

  class CharacterTable {
   public:
    std::string                                  name;
    mpz_class                                    group_order;
    std::vector<ClassInfo>                       classes;
    std::map<std::uint32_t, std::vector<std::size_t>> power_maps;
    std::vector<ClassFunction>                   irreducibles;
    std::optional<std::size_t>                   distinguished;

    std::size_t num_classes() const noexcept {
      return classes.size();
    }

    std::uint32_t element_order(std::size_t c) const {
      return classes.at(c).element_order;
    }

    // Index of the class with the given label, if any.
    std::optional<std::size_t> class_index(std::string const& label) const;

    // Class index or FormatError naming the table.
    std::size_t require_class(std::string const& label) const;

    // Primes dividing the group order, ascending.
    std::vector<std::uint32_t> primes() const;
  };

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  // Class of g^k for g in class c, composing prime power maps along the
  // factorisation of k mod element_order(c).  Factors coprime to the order
  // without a stored map are resolved through the Galois action on columns.
  std::size_t power_class(CharacterTable const& t, std::size_t c, std::int64_t k);

  // True iff power_class(t, c, k) == c for all k coprime to the element order.
  bool is_rational_class(CharacterTable const& t, std::size_t c);

  bool is_rational_character(ClassFunction const& chi);

  // <a, b> = (1/|G|) sum_c |c| a(c) conj(b(c)).  Throws PreconditionError if
  // the sum is not divisible by |G|.
  Cyclotomic inner_product(CharacterTable const& t,
                           ClassFunction const&  a,
                           ClassFunction const&  b);

  Cyclotomic scalar_product(CharacterTable const& t,
                            ClassFunction const&  theta,
                            std::size_t           psi);

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  struct ValidationIssue {
    std::string              check;  // e.g. "row-orthogonality"
    std::vector<std::size_t> indices;
    std::string              detail;
  };

  struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept {
      return issues.empty();
    }
    std::string summary() const;
  };

  // Structural problems (misaligned lengths, indices out of range) throw
  // FormatError; mathematical invariants that fail are listed in the report.
  ValidationReport validate(CharacterTable const& t);

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  CharacterTable table_from_json(nlohmann::json const& j);
  nlohmann::json to_json(CharacterTable const& t);
  CharacterTable load_table(std::filesystem::path const& path);
  void           save_table(CharacterTable const& t, std::filesystem::path const& path);

}  // namespace ctfuse
