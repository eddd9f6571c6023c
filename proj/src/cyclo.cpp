#include "ctfuse/cyclo.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ctfuse/error.hpp"

namespace ctfuse {

  namespace cyclo {

    std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
      std::vector<std::uint32_t> result;
      for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
        if (n % p == 0) {
          result.push_back(p);
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        result.push_back(n);
      }
      return result;
    }

    std::uint32_t euler_phi(std::uint32_t n) {
      std::uint32_t result = n;
      for (auto p : prime_factors(n)) {
        result = result / p * (p - 1);
      }
      return result;
    }

    std::vector<std::int64_t> const& cyclotomic_polynomial(std::uint32_t n) {
      static std::recursive_mutex                                   mtx;
      static std::map<std::uint32_t, std::vector<std::int64_t>> cache;
      std::lock_guard<std::recursive_mutex>                         lock(mtx);
      auto it = cache.find(n);
      if (it != cache.end()) {
        return it->second;
      }
      // x^n - 1 divided by Phi_d for every proper divisor d of n.
      std::vector<std::int64_t> poly(n + 1, 0);
      poly[0] = -1;
      poly[n] = 1;
      for (std::uint32_t d = 1; d < n; ++d) {
        if (n % d != 0) {
          continue;
        }
        auto const&               div = cyclotomic_polynomial(d);
        std::size_t const         dd  = div.size() - 1;
        std::size_t const         pd  = poly.size() - 1;
        std::vector<std::int64_t> quot(pd - dd + 1, 0);
        for (std::size_t i = pd + 1; i-- > dd;) {
          std::int64_t c = poly[i];
          if (c == 0) {
            continue;
          }
          quot[i - dd] = c;
          for (std::size_t j = 0; j <= dd; ++j) {
            poly[i - dd + j] -= c * div[j];
          }
        }
        poly = std::move(quot);
      }
      return cache.emplace(n, std::move(poly)).first->second;
    }

  }  // namespace cyclo

  namespace {

    using cyclo::euler_phi;
    using cyclo::prime_factors;

    // In-place remainder modulo Phi_n; afterwards only the first phi(n)
    // entries can be non-zero.
    void reduce_in_place(std::uint32_t n, std::vector<mpz_class>& v) {
      auto const&       phi_poly = cyclo::cyclotomic_polynomial(n);
      std::size_t const deg      = phi_poly.size() - 1;
      mpz_class         t;
      for (std::size_t i = v.size(); i-- > deg;) {
        if (sgn(v[i]) == 0) {
          continue;
        }
        mpz_class c = v[i];
        for (std::size_t j = 0; j < deg; ++j) {
          if (phi_poly[j] != 0) {
            t = c * phi_poly[j];
            v[i - deg + j] -= t;
          }
        }
        v[i] = 0;
      }
    }

    bool reduces_to_zero(std::uint32_t n, std::vector<mpz_class> v) {
      if (std::all_of(v.begin(), v.end(), [](auto const& x) { return sgn(x) == 0; })) {
        return true;
      }
      reduce_in_place(n, v);
      return std::all_of(v.begin(), v.end(), [](auto const& x) { return sgn(x) == 0; });
    }

    std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
      // m is small; extended Euclid on signed values.
      std::int64_t t = 0, new_t = 1;
      std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
      while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
      }
      if (t < 0) {
        t += static_cast<std::int64_t>(m);
      }
      return static_cast<std::uint64_t>(t);
    }

    bool only_constant(std::vector<mpz_class> const& v) {
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (sgn(v[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    // Tries to rewrite v (dense over Z/n) as an element of Q(zeta_{n/p}),
    // where zeta_{n/p} = zeta_n^p.  On success v is replaced and true returned.
    bool descend(std::uint32_t n, std::uint32_t p, std::vector<mpz_class>& v) {
      std::uint32_t const                 m = n / p;
      std::vector<std::vector<mpz_class>> parts(p, std::vector<mpz_class>(m));
      if (m % p == 0) {
        // zeta_n^(r + p j) = zeta_n^r * zeta_m^j and {1, .., zeta_n^(p-1)}
        // is a basis of Q(zeta_n) over Q(zeta_m).
        for (std::uint32_t e = 0; e < n; ++e) {
          if (sgn(v[e]) != 0) {
            parts[e % p][e / p] += v[e];
          }
        }
        for (std::uint32_t r = 1; r < p; ++r) {
          if (!reduces_to_zero(m, parts[r])) {
            return false;
          }
        }
        v = std::move(parts[0]);
        return true;
      }
      // p exactly divides n: zeta_n^e = zeta_m^a * zeta_p^b with
      // p a + m b = e (mod n); {1, .., zeta_p^(p-2)} is a basis over Q(zeta_m).
      std::uint64_t const p_inv = m == 1 ? 0 : inverse_mod(p % m, m);
      std::uint64_t const m_inv = inverse_mod(m % p, p);
      for (std::uint64_t e = 0; e < n; ++e) {
        if (sgn(v[e]) != 0) {
          std::uint64_t a = m == 1 ? 0 : (e % m) * p_inv % m;
          std::uint64_t b = (e % p) * m_inv % p;
          parts[b][a] += v[e];
        }
      }
      auto const& last = parts[p - 1];
      for (std::uint32_t b = 0; b + 1 < p; ++b) {
        for (std::uint32_t a = 0; a < m; ++a) {
          if (sgn(last[a]) != 0) {
            parts[b][a] -= last[a];
          }
        }
      }
      for (std::uint32_t b = 1; b + 1 < p; ++b) {
        if (!reduces_to_zero(m, parts[b])) {
          return false;
        }
      }
      v = std::move(parts[0]);
      return true;
    }

    std::vector<mpz_class> embed(Cyclotomic const& a, std::uint32_t n) {
      std::vector<mpz_class> v(n);
      std::uint64_t const    step = n / a.conductor();
      auto const&            c    = a.coefficients();
      for (std::size_t e = 0; e < c.size(); ++e) {
        v[(e * step) % n] = c[e];
      }
      return v;
    }

    void convolve_into(std::vector<mpz_class>&   out,
                       std::uint32_t             n,
                       Cyclotomic const&         a,
                       Cyclotomic const&         b,
                       mpz_class const*          scale) {
      std::uint64_t const sa = n / a.conductor();
      std::uint64_t const sb = n / b.conductor();
      auto const&         ca = a.coefficients();
      auto const&         cb = b.coefficients();
      mpz_class           t;
      for (std::size_t i = 0; i < ca.size(); ++i) {
        if (sgn(ca[i]) == 0) {
          continue;
        }
        mpz_class ci = scale == nullptr ? ca[i] : ca[i] * *scale;
        for (std::size_t j = 0; j < cb.size(); ++j) {
          if (sgn(cb[j]) == 0) {
            continue;
          }
          t = ci * cb[j];
          out[(i * sa + j * sb) % n] += t;
        }
      }
    }

    std::uint32_t lcm32(std::uint32_t a, std::uint32_t b) {
      std::uint64_t l = std::lcm<std::uint64_t>(a, b);
      if (l > 0xFFFFFFFFu) {
        throw PreconditionError("cyclotomic conductor overflow");
      }
      return static_cast<std::uint32_t>(l);
    }

  }  // namespace

  Cyclotomic::Cyclotomic(long value) : Cyclotomic(mpz_class(value)) {}

  Cyclotomic::Cyclotomic(mpz_class value) {
    if (sgn(value) != 0) {
      _coeffs.push_back(std::move(value));
    }
  }

  Cyclotomic Cyclotomic::root_of_unity(std::uint32_t n, std::int64_t e) {
    return from_terms(n, {{e, mpz_class(1)}});
  }

  Cyclotomic Cyclotomic::from_terms(
      std::uint32_t                                          n,
      std::vector<std::pair<std::int64_t, mpz_class>> const& terms) {
    if (n == 0) {
      throw PreconditionError("cyclotomic conductor must be positive");
    }
    std::vector<mpz_class> v(n);
    for (auto const& [e, c] : terms) {
      std::int64_t r = e % static_cast<std::int64_t>(n);
      if (r < 0) {
        r += n;
      }
      v[static_cast<std::size_t>(r)] += c;
    }
    return from_dense(n, std::move(v));
  }

  Cyclotomic Cyclotomic::from_dense(std::uint32_t n, std::vector<mpz_class> v) {
    Cyclotomic result;
    if (only_constant(v)) {
      if (!v.empty() && sgn(v[0]) != 0) {
        result._coeffs.push_back(std::move(v[0]));
      }
      return result;
    }
    bool progress = true;
    while (n > 1 && progress) {
      progress = false;
      for (auto p : prime_factors(n)) {
        if (descend(n, p, v)) {
          n /= p;
          progress = true;
          break;
        }
      }
    }
    reduce_in_place(n, v);
    v.resize(n == 1 ? 1 : euler_phi(n));
    while (!v.empty() && sgn(v.back()) == 0) {
      v.pop_back();
    }
    result._conductor = v.empty() ? 1 : n;
    result._coeffs    = std::move(v);
    return result;
  }

  std::optional<mpz_class> Cyclotomic::as_integer() const {
    if (_conductor != 1) {
      return std::nullopt;
    }
    return _coeffs.empty() ? mpz_class(0) : _coeffs[0];
  }

  Cyclotomic Cyclotomic::galois(std::int64_t k) const {
    if (_conductor == 1) {
      return *this;
    }
    std::int64_t const n = _conductor;
    std::int64_t       r = k % n;
    if (r < 0) {
      r += n;
    }
    if (std::gcd(r, n) != 1) {
      throw InvalidAutomorphism("galois exponent " + std::to_string(k)
                                + " is not coprime to conductor "
                                + std::to_string(n));
    }
    std::vector<mpz_class> v(_conductor);
    for (std::size_t e = 0; e < _coeffs.size(); ++e) {
      v[(e * static_cast<std::uint64_t>(r)) % _conductor] = _coeffs[e];
    }
    return from_dense(_conductor, std::move(v));
  }

  Cyclotomic Cyclotomic::divide_exact(mpz_class const& d) const {
    if (sgn(d) == 0) {
      throw PreconditionError("division of a cyclotomic by zero");
    }
    Cyclotomic result = *this;
    for (auto& c : result._coeffs) {
      if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
        throw PreconditionError("non-integral division of " + to_string() + " by "
                                + d.get_str());
      }
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    return result;
  }

  Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic result = *this;
    for (auto& c : result._coeffs) {
      c = -c;
    }
    return result;
  }

  Cyclotomic& Cyclotomic::operator+=(Cyclotomic const& other) {
    if (_conductor == 1 && other._conductor == 1) {
      mpz_class sum = (_coeffs.empty() ? mpz_class(0) : _coeffs[0])
                      + (other._coeffs.empty() ? mpz_class(0) : other._coeffs[0]);
      *this = Cyclotomic(std::move(sum));
      return *this;
    }
    std::uint32_t const n = lcm32(_conductor, other._conductor);
    auto                v = embed(*this, n);
    auto                w = embed(other, n);
    for (std::uint32_t i = 0; i < n; ++i) {
      v[i] += w[i];
    }
    *this = from_dense(n, std::move(v));
    return *this;
  }

  Cyclotomic& Cyclotomic::operator-=(Cyclotomic const& other) {
    return *this += -other;
  }

  Cyclotomic& Cyclotomic::operator*=(Cyclotomic const& other) {
    if (is_zero() || other.is_zero()) {
      *this = Cyclotomic();
      return *this;
    }
    if (_conductor == 1 && other._conductor == 1) {
      _coeffs[0] *= other._coeffs[0];
      return *this;
    }
    std::uint32_t const    n = lcm32(_conductor, other._conductor);
    std::vector<mpz_class> v(n);
    convolve_into(v, n, *this, other, nullptr);
    *this = from_dense(n, std::move(v));
    return *this;
  }

  std::string Cyclotomic::to_string() const {
    if (_conductor == 1) {
      return as_integer()->get_str();
    }
    std::ostringstream os;
    bool               first = true;
    for (std::size_t e = 0; e < _coeffs.size(); ++e) {
      mpz_class const& c = _coeffs[e];
      if (sgn(c) == 0) {
        continue;
      }
      if (sgn(c) < 0) {
        os << '-';
      } else if (!first) {
        os << '+';
      }
      first             = false;
      mpz_class const a = abs(c);
      if (e == 0) {
        os << a.get_str();
        continue;
      }
      if (a != 1) {
        os << a.get_str() << '*';
      }
      os << "E(" << _conductor << ')';
      if (e > 1) {
        os << '^' << e;
      }
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // CyclotomicAccumulator
  ////////////////////////////////////////////////////////////////////////

  std::vector<mpz_class>& CyclotomicAccumulator::bucket(std::uint32_t n) {
    auto it = _buckets.find(n);
    if (it == _buckets.end()) {
      it = _buckets.emplace(n, std::vector<mpz_class>(n)).first;
    }
    return it->second;
  }

  void CyclotomicAccumulator::add(Cyclotomic const& a) {
    if (a.is_rational()) {
      if (!a.is_zero()) {
        _rational += a.coefficients()[0];
      }
      return;
    }
    auto&       b = bucket(a.conductor());
    auto const& c = a.coefficients();
    for (std::size_t e = 0; e < c.size(); ++e) {
      b[e] += c[e];
    }
  }

  void CyclotomicAccumulator::add_product(Cyclotomic const& a, Cyclotomic const& b) {
    if (a.is_zero() || b.is_zero()) {
      return;
    }
    if (a.is_rational() && b.is_rational()) {
      mpz_addmul(_rational.get_mpz_t(),
                 a.coefficients()[0].get_mpz_t(),
                 b.coefficients()[0].get_mpz_t());
      return;
    }
    std::uint32_t const n = lcm32(a.conductor(), b.conductor());
    convolve_into(bucket(n), n, a, b, nullptr);
  }

  void CyclotomicAccumulator::add_product(Cyclotomic const& a,
                                          Cyclotomic const& b,
                                          mpz_class const&  scale) {
    if (a.is_zero() || b.is_zero() || sgn(scale) == 0) {
      return;
    }
    if (a.is_rational() && b.is_rational()) {
      mpz_class t = a.coefficients()[0] * scale;
      mpz_addmul(_rational.get_mpz_t(), t.get_mpz_t(), b.coefficients()[0].get_mpz_t());
      return;
    }
    std::uint32_t const n = lcm32(a.conductor(), b.conductor());
    convolve_into(bucket(n), n, a, b, &scale);
  }

  Cyclotomic CyclotomicAccumulator::total() const {
    Cyclotomic result(_rational);
    for (auto const& [n, v] : _buckets) {
      result += Cyclotomic::from_dense(n, v);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::json to_json(Cyclotomic const& a) {
    if (a.is_rational()) {
      mpz_class v = *a.as_integer();
      if (v.fits_slong_p()) {
        return nlohmann::json(v.get_si());
      }
    }
    nlohmann::json terms = nlohmann::json::array();
    auto const&    c     = a.coefficients();
    for (std::size_t e = 0; e < c.size(); ++e) {
      if (sgn(c[e]) != 0) {
        terms.push_back(nlohmann::json::array({e, c[e].get_str()}));
      }
    }
    return nlohmann::json{{"n", a.conductor()}, {"c", std::move(terms)}};
  }

  Cyclotomic cyclotomic_from_json(nlohmann::json const& j) {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) {
        return Cyclotomic(mpz_class(std::to_string(j.get<std::uint64_t>())));
      }
      return Cyclotomic(mpz_class(std::to_string(j.get<std::int64_t>())));
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("c")
        || !j["n"].is_number_unsigned() || !j["c"].is_array()) {
      throw FormatError("invalid cyclotomic encoding: " + j.dump());
    }
    auto const n = j["n"].get<std::uint64_t>();
    if (n == 0 || n > 0xFFFFFFFFu) {
      throw FormatError("invalid cyclotomic conductor: " + j.dump());
    }
    std::vector<std::pair<std::int64_t, mpz_class>> terms;
    for (auto const& t : j["c"]) {
      if (!t.is_array() || t.size() != 2 || !t[0].is_number_unsigned()
          || !t[1].is_string()) {
        throw FormatError("invalid cyclotomic term: " + t.dump());
      }
      mpz_class c;
      if (c.set_str(t[1].get<std::string>(), 10) != 0) {
        throw FormatError("invalid cyclotomic coefficient: " + t.dump());
      }
      terms.emplace_back(t[0].get<std::int64_t>(), std::move(c));
    }
    return Cyclotomic::from_terms(static_cast<std::uint32_t>(n), terms);
  }

}  // namespace ctfuse
