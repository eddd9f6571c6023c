#include "ctfuse/chartab.hpp"

#include <numeric>
#include <sstream>

#include "ctfuse/error.hpp"

namespace ctfuse {

  namespace {

    std::vector<std::uint32_t> factor_with_multiplicity(std::uint64_t k) {
      std::vector<std::uint32_t> result;
      for (std::uint64_t p = 2; p * p <= k; ++p) {
        while (k % p == 0) {
          result.push_back(static_cast<std::uint32_t>(p));
          k /= p;
        }
      }
      if (k > 1) {
        result.push_back(static_cast<std::uint32_t>(k));
      }
      return result;
    }

    bool all_maps_present(CharacterTable const& t, std::vector<std::uint32_t> const& ps) {
      for (auto p : ps) {
        if (t.power_maps.find(p) == t.power_maps.end()) {
          return false;
        }
      }
      return true;
    }

    std::string join(std::vector<std::size_t> const& v) {
      std::ostringstream os;
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i == 0 ? "" : ",") << v[i];
      }
      return os.str();
    }

  }  // namespace

  std::optional<std::size_t> CharacterTable::class_index(std::string const& label) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].name == label) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t CharacterTable::require_class(std::string const& label) const {
    auto i = class_index(label);
    if (!i) {
      throw FormatError("table " + name + " has no class labelled " + label);
    }
    return *i;
  }

  std::vector<std::uint32_t> CharacterTable::primes() const {
    std::vector<std::uint32_t> result;
    mpz_class                  n = group_order;
    for (std::uint32_t p = 2; n > 1; ++p) {
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        result.push_back(p);
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
          mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
      }
      if (p > 100000) {
        throw FormatError("group order of " + name + " has a large prime factor");
      }
    }
    return result;
  }

  std::size_t power_class(CharacterTable const& t, std::size_t c, std::int64_t k) {
    std::int64_t const o = t.element_order(c);
    std::int64_t       r = k % o;
    if (r < 0) {
      r += o;
    }
    if (r == 0) {
      return 0;
    }
    // g^k = g^(k + j o); pick the first representative whose prime factors
    // all have stored power maps.
    for (std::int64_t shift = 0; shift < 64; ++shift) {
      auto ps = factor_with_multiplicity(static_cast<std::uint64_t>(r + shift * o));
      if (!all_maps_present(t, ps)) {
        continue;
      }
      std::size_t cur = c;
      for (auto p : ps) {
        cur = t.power_maps.at(p).at(cur);
      }
      return cur;
    }
    // Split r = d * u with d made of primes dividing o and u coprime to o.
    // Powers by d use stored maps; for u the class is the column that the
    // Galois automorphism zeta -> zeta^u sends the column of c to.
    std::int64_t d = 1, u = r;
    for (auto p : factor_with_multiplicity(static_cast<std::uint64_t>(o))) {
      while (u % static_cast<std::int64_t>(p) == 0) {
        u /= p;
        d *= p;
      }
    }
    auto const dp = factor_with_multiplicity(static_cast<std::uint64_t>(d));
    if (all_maps_present(t, dp) && !t.irreducibles.empty()) {
      std::size_t cur = c;
      for (auto p : dp) {
        cur = t.power_maps.at(p).at(cur);
      }
      std::int64_t const oc = t.element_order(cur);
      for (std::size_t x = 0; x < t.num_classes(); ++x) {
        if (t.element_order(x) != oc) {
          continue;
        }
        bool match = true;
        for (std::size_t i = 0; match && i < t.irreducibles.size(); ++i) {
          match = t.irreducibles[i][x] == t.irreducibles[i][cur].galois(u);
        }
        if (match) {
          return x;
        }
      }
    }
    throw DataIncompleteError("table " + t.name + " lacks the power maps needed for class "
                              + t.classes[c].name + " to the power "
                              + std::to_string(k));
  }

  bool is_rational_class(CharacterTable const& t, std::size_t c) {
    std::int64_t const o = t.element_order(c);
    for (std::int64_t k = 2; k < o; ++k) {
      if (std::gcd(k, o) == 1 && power_class(t, c, k) != c) {
        return false;
      }
    }
    return true;
  }

  bool is_rational_character(ClassFunction const& chi) {
    for (auto const& v : chi) {
      if (!v.is_rational()) {
        return false;
      }
    }
    return true;
  }

  Cyclotomic inner_product(CharacterTable const& t,
                           ClassFunction const&  a,
                           ClassFunction const&  b) {
    if (a.size() != t.num_classes() || b.size() != t.num_classes()) {
      throw PreconditionError("class function length does not match table " + t.name);
    }
    CyclotomicAccumulator acc;
    for (std::size_t c = 0; c < a.size(); ++c) {
      acc.add_product(a[c], b[c].is_rational() ? b[c] : b[c].conj(), t.classes[c].size);
    }
    return acc.total().divide_exact(t.group_order);
  }

  Cyclotomic scalar_product(CharacterTable const& t,
                            ClassFunction const&  theta,
                            std::size_t           psi) {
    return inner_product(t, theta, t.irreducibles.at(psi));
  }

  std::string ValidationReport::summary() const {
    if (issues.empty()) {
      return "all checks pass";
    }
    std::ostringstream os;
    for (auto const& issue : issues) {
      os << issue.check << " [" << join(issue.indices) << "]";
      if (!issue.detail.empty()) {
        os << ": " << issue.detail;
      }
      os << '\n';
    }
    return os.str();
  }

  ValidationReport validate(CharacterTable const& t) {
    std::size_t const n = t.num_classes();
    if (n == 0) {
      throw FormatError("table " + t.name + " has no classes");
    }
    for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
      if (t.irreducibles[i].size() != n) {
        throw FormatError("table " + t.name + ": irreducible " + std::to_string(i)
                          + " has " + std::to_string(t.irreducibles[i].size())
                          + " values for " + std::to_string(n) + " classes");
      }
    }
    for (auto const& [p, map] : t.power_maps) {
      if (map.size() != n) {
        throw FormatError("table " + t.name + ": power map " + std::to_string(p)
                          + " has wrong length");
      }
      for (auto img : map) {
        if (img >= n) {
          throw FormatError("table " + t.name + ": power map " + std::to_string(p)
                            + " points outside the class list");
        }
      }
    }
    if (t.distinguished && *t.distinguished >= t.irreducibles.size()) {
      throw FormatError("table " + t.name + ": distinguished character out of range");
    }

    ValidationReport report;
    auto issue = [&report](std::string check, std::vector<std::size_t> idx, std::string detail = {}) {
      report.issues.push_back({std::move(check), std::move(idx), std::move(detail)});
    };

    if (t.irreducibles.size() != n) {
      issue("irreducible-count", {t.irreducibles.size(), n});
    }
    if (t.classes[0].element_order != 1 || t.classes[0].size != 1) {
      issue("identity-class", {0});
    }
    if (!t.irreducibles.empty()) {
      for (std::size_t c = 0; c < n; ++c) {
        if (t.irreducibles[0][c] != Cyclotomic(1)) {
          issue("trivial-character", {0, c});
          break;
        }
      }
    }

    mpz_class total_size = 0;
    for (std::size_t c = 0; c < n; ++c) {
      auto const& info = t.classes[c];
      total_size += info.size;
      if (info.size * info.centralizer_order != t.group_order) {
        issue("class-size", {c}, "size * centralizer != group order");
      }
      if (info.element_order == 0
          || !mpz_divisible_ui_p(t.group_order.get_mpz_t(), info.element_order)) {
        issue("element-order", {c}, "element order does not divide group order");
      }
    }
    if (total_size != t.group_order) {
      issue("class-equation", {}, "class sizes sum to " + total_size.get_str());
    }

    for (auto p : t.primes()) {
      auto it = t.power_maps.find(p);
      if (it == t.power_maps.end()) {
        issue("power-map-missing", {p});
        continue;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::uint32_t const o   = t.classes[c].element_order;
        std::uint32_t const img = t.classes[it->second[c]].element_order;
        std::uint32_t const expected = o % p == 0 ? o / p : o;
        if (img != expected) {
          issue("power-map-order", {p, c},
                "class " + t.classes[c].name + " maps to order " + std::to_string(img));
        }
      }
    }

    if (t.irreducibles.size() != n) {
      return report;
    }

    std::vector<ClassFunction> conjugates(n, ClassFunction(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        auto const& v    = t.irreducibles[i][c];
        conjugates[i][c] = v.is_rational() ? v : v.conj();
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        CyclotomicAccumulator acc;
        for (std::size_t c = 0; c < n; ++c) {
          acc.add_product(t.irreducibles[i][c], conjugates[j][c], t.classes[c].size);
        }
        Cyclotomic const expected = i == j ? Cyclotomic(t.group_order) : Cyclotomic(0);
        Cyclotomic const got      = acc.total();
        if (got != expected) {
          issue("row-orthogonality", {i, j}, "|G|<chi_i, chi_j> = " + got.to_string());
        }
      }
    }

    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t d = c; d < n; ++d) {
        CyclotomicAccumulator acc;
        for (std::size_t i = 0; i < n; ++i) {
          acc.add_product(t.irreducibles[i][c], conjugates[i][d]);
        }
        Cyclotomic const expected
            = c == d ? Cyclotomic(t.classes[c].centralizer_order) : Cyclotomic(0);
        Cyclotomic const got = acc.total();
        if (got != expected) {
          issue("column-orthogonality", {c, d}, "sum = " + got.to_string());
        }
      }
    }
    return report;
  }

}  // namespace ctfuse
