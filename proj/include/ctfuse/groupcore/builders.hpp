#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ctfuse/groupcore/perm_group.hpp"

namespace ctfuse::groupcore {

  // 2x2 matrix over GF(p), row major, acting on column vectors.
  using Mat2 = std::array<std::int64_t, 4>;

  Mat2          mat_mul(Mat2 const& a, Mat2 const& b, std::int64_t p);
  std::int64_t  mat_det(Mat2 const& a, std::int64_t p);
  std::uint64_t mat_order(Mat2 const& a, std::int64_t p);

  // Point (x, y) of GF(p)^2 is x + p*y.
  std::size_t affine_point(std::int64_t x, std::int64_t y, std::int64_t p);

  // Linear part acting on GF(p)^2 as a permutation of the p^2 points.
  Perm linear_perm(Mat2 const& m, std::int64_t p);

  // Translations plus the given linear maps; p^2 <= 256.
  PermGroup build_affine(std::int64_t p, std::vector<Mat2> const& mats);

  // Möbius maps on GF(q) u {inf}, inf being point q: x+1, wx and -1/x with
  // w a primitive root (PGL) or its square (PSL).  q prime, q <= 23.
  PermGroup build_projective(std::int64_t q, bool with_pgl);

  // x -> (a x + b) / (c x + d) on the projective line.
  Perm mobius_perm(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t q);

  std::int64_t primitive_root(std::int64_t p);

}  // namespace ctfuse::groupcore
