#include "ctfuse/groupcore/builders.hpp"

#include "ctfuse/error.hpp"

namespace ctfuse::groupcore {

  namespace {

    std::int64_t mod(std::int64_t a, std::int64_t p) {
      a %= p;
      return a < 0 ? a + p : a;
    }

    bool is_prime(std::int64_t n) {
      if (n < 2) {
        return false;
      }
      for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          return false;
        }
      }
      return true;
    }

    std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
      std::int64_t r = 1, b = mod(a, p), e = p - 2;
      while (e > 0) {
        if (e & 1) {
          r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
      }
      return r;
    }

  }  // namespace

  Mat2 mat_mul(Mat2 const& a, Mat2 const& b, std::int64_t p) {
    return {mod(a[0] * b[0] + a[1] * b[2], p), mod(a[0] * b[1] + a[1] * b[3], p),
            mod(a[2] * b[0] + a[3] * b[2], p), mod(a[2] * b[1] + a[3] * b[3], p)};
  }

  std::int64_t mat_det(Mat2 const& a, std::int64_t p) {
    return mod(a[0] * a[3] - a[1] * a[2], p);
  }

  std::uint64_t mat_order(Mat2 const& a, std::int64_t p) {
    if (mat_det(a, p) == 0) {
      throw PreconditionError("singular matrix has no order");
    }
    Mat2 const    id{1, 0, 0, 1};
    Mat2          x = mat_mul(a, id, p);
    std::uint64_t k = 1;
    while (x != id) {
      x = mat_mul(x, a, p);
      ++k;
    }
    return k;
  }

  std::size_t affine_point(std::int64_t x, std::int64_t y, std::int64_t p) {
    return static_cast<std::size_t>(mod(x, p) + p * mod(y, p));
  }

  Perm linear_perm(Mat2 const& m, std::int64_t p) {
    if (mat_det(m, p) == 0) {
      throw PreconditionError("singular matrix");
    }
    Perm out(static_cast<std::size_t>(p * p));
    for (std::int64_t y = 0; y < p; ++y) {
      for (std::int64_t x = 0; x < p; ++x) {
        out[affine_point(x, y, p)]
            = static_cast<Point>(affine_point(m[0] * x + m[1] * y, m[2] * x + m[3] * y, p));
      }
    }
    return out;
  }

  PermGroup build_affine(std::int64_t p, std::vector<Mat2> const& mats) {
    if (!is_prime(p) || p * p > static_cast<std::int64_t>(max_degree)) {
      throw PreconditionError("affine models need a prime p with p^2 <= 256");
    }
    auto const        n = static_cast<std::size_t>(p * p);
    std::vector<Perm> gens;
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
      Perm t(n);
      for (std::int64_t y = 0; y < p; ++y) {
        for (std::int64_t x = 0; x < p; ++x) {
          t[affine_point(x, y, p)] = static_cast<Point>(affine_point(x + dx, y + dy, p));
        }
      }
      gens.push_back(std::move(t));
    }
    for (auto const& m : mats) {
      gens.push_back(linear_perm(m, p));
    }
    return PermGroup(n, std::move(gens));
  }

  Perm mobius_perm(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t q) {
    if (mod(a * d - b * c, q) == 0) {
      throw PreconditionError("singular Möbius map");
    }
    Perm out(static_cast<std::size_t>(q + 1));
    for (std::int64_t x = 0; x <= q; ++x) {
      std::int64_t num, den;
      if (x == q) {
        num = a;
        den = c;
      } else {
        num = a * x + b;
        den = c * x + d;
      }
      num = mod(num, q);
      den = mod(den, q);
      out[static_cast<std::size_t>(x)]
          = static_cast<Point>(den == 0 ? q : num * inverse_mod(den, q) % q);
    }
    return out;
  }

  std::int64_t primitive_root(std::int64_t p) {
    if (!is_prime(p)) {
      throw PreconditionError("primitive roots are only provided for primes");
    }
    for (std::int64_t g = 1; g < p; ++g) {
      std::int64_t x = g, k = 1;
      while (x != 1) {
        x = x * g % p;
        ++k;
      }
      if (k == p - 1) {
        return g;
      }
    }
    return 1;
  }

  PermGroup build_projective(std::int64_t q, bool with_pgl) {
    if (!is_prime(q) || q > 23) {
      throw PreconditionError("projective models need a prime q <= 23");
    }
    std::int64_t const w    = primitive_root(q);
    std::int64_t const mult = with_pgl ? w : w * w % q;
    std::vector<Perm>  gens{mobius_perm(1, 1, 0, 1, q), mobius_perm(mult, 0, 0, 1, q),
                           mobius_perm(0, q - 1, 1, 0, q)};
    return PermGroup(static_cast<std::size_t>(q + 1), std::move(gens));
  }

}  // namespace ctfuse::groupcore
