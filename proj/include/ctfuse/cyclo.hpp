#pragma once

// Exact arithmetic in the rings Z[zeta_n].
//
// A Cyclotomic stores its value in the power basis 1, z, ..., z^(phi(n)-1)
// of Q(zeta_n), reduced modulo the n-th cyclotomic polynomial, where n is
// the smallest conductor whose field contains the value.  Trailing zero
// coefficients are dropped, so zero is {n = 1, no coefficients} and equal
// values have identical representations.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace ctfuse {

  class Cyclotomic {
   public:
    Cyclotomic() = default;
    Cyclotomic(long value);  // NOLINT(runtime/explicit)
    explicit Cyclotomic(mpz_class value);

    // zeta_n^e, e taken modulo n.
    static Cyclotomic root_of_unity(std::uint32_t n, std::int64_t e = 1);

    // sum of c * zeta_n^e over the given terms; exponents are reduced mod n.
    static Cyclotomic
    from_terms(std::uint32_t n,
               std::vector<std::pair<std::int64_t, mpz_class>> const& terms);

    std::uint32_t conductor() const noexcept {
      return _conductor;
    }

    std::vector<mpz_class> const& coefficients() const noexcept {
      return _coeffs;
    }

    bool is_zero() const noexcept {
      return _coeffs.empty();
    }

    bool is_rational() const noexcept {
      return _conductor == 1;
    }

    std::optional<mpz_class> as_integer() const;

    // zeta_n -> zeta_n^k.  k = -1 is complex conjugation.
    Cyclotomic galois(std::int64_t k) const;

    Cyclotomic conj() const {
      return galois(-1);
    }

    // Divides every coefficient by d; throws PreconditionError if the
    // quotient is not integral.
    Cyclotomic divide_exact(mpz_class const& d) const;

    // GAP-like rendering of the stored basis, e.g. "-1", "-1-E(5)^2-E(5)^3",
    // "3*E(7)^2-E(7)^3".
    std::string to_string() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(Cyclotomic const& other);
    Cyclotomic& operator-=(Cyclotomic const& other);
    Cyclotomic& operator*=(Cyclotomic const& other);

    friend Cyclotomic operator+(Cyclotomic a, Cyclotomic const& b) {
      return a += b;
    }
    friend Cyclotomic operator-(Cyclotomic a, Cyclotomic const& b) {
      return a -= b;
    }
    friend Cyclotomic operator*(Cyclotomic a, Cyclotomic const& b) {
      return a *= b;
    }
    friend bool operator==(Cyclotomic const& a, Cyclotomic const& b) {
      return a._conductor == b._conductor && a._coeffs == b._coeffs;
    }
    friend bool operator!=(Cyclotomic const& a, Cyclotomic const& b) {
      return !(a == b);
    }

    // Canonicalizes a vector of length n holding coefficients of
    // zeta_n^0, ..., zeta_n^(n-1) (not reduced modulo Phi_n).
    static Cyclotomic from_dense(std::uint32_t n, std::vector<mpz_class> v);

   private:
    std::uint32_t          _conductor = 1;
    std::vector<mpz_class> _coeffs;
  };

  // Sums of products a*b (optionally scaled) without canonicalizing each
  // term.  Products are collected per conductor in Z[x]/(x^n - 1) and only
  // reduced by total().
  class CyclotomicAccumulator {
   public:
    void add(Cyclotomic const& a);
    void add_product(Cyclotomic const& a, Cyclotomic const& b);
    void add_product(Cyclotomic const& a, Cyclotomic const& b, mpz_class const& scale);
    Cyclotomic total() const;

   private:
    std::vector<mpz_class>& bucket(std::uint32_t n);

    mpz_class                                        _rational;
    std::map<std::uint32_t, std::vector<mpz_class>> _buckets;
  };

  namespace cyclo {
    std::uint32_t euler_phi(std::uint32_t n);
    std::vector<std::uint32_t> prime_factors(std::uint32_t n);
    // Coefficients of Phi_n, constant term first.
    std::vector<std::int64_t> const& cyclotomic_polynomial(std::uint32_t n);
  }  // namespace cyclo

  // JSON value encoding: a bare integer when the value is a rational integer
  // fitting in 64 bits, otherwise {"n": conductor, "c": [[e, "coeff"], ...]}.
  nlohmann::json to_json(Cyclotomic const& a);
  Cyclotomic     cyclotomic_from_json(nlohmann::json const& j);

}  // namespace ctfuse
