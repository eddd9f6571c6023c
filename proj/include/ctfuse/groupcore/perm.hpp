#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ctfuse::groupcore {

  // Points are bytes, so degrees are at most 256.
  using Point = std::uint8_t;
  using Perm  = std::vector<Point>;

  inline constexpr std::size_t max_degree = 256;

  enum class Kernel { scalar, ssse3, avx2 };

  // out[i] = b[a[i]]: apply a, then b.  out may not alias b.
  using ComposeFn = void (*)(Point const* a, Point const* b, Point* out, std::size_t n);

  namespace kernels {
    void compose_scalar(Point const* a, Point const* b, Point* out, std::size_t n);
    void compose_ssse3(Point const* a, Point const* b, Point* out, std::size_t n);
    void compose_avx2(Point const* a, Point const* b, Point* out, std::size_t n);
  }  // namespace kernels

  bool        kernel_supported(Kernel k);
  std::string kernel_name(Kernel k);
  // Best supported kernel, unless CTFUSE_KERNEL=scalar|ssse3|avx2 asks for
  // another one.
  Kernel    active_kernel();
  // Throws PreconditionError if k is not supported on this CPU.
  void      set_kernel(Kernel k);
  ComposeFn compose_fn(Kernel k);

  void compose(Point const* a, Point const* b, Point* out, std::size_t n);

  Perm identity_perm(std::size_t n);
  Perm compose(Perm const& a, Perm const& b);
  Perm inverse(Perm const& a);
  Perm power(Perm const& a, std::int64_t k);
  bool is_identity(Perm const& a);
  bool is_permutation(Perm const& a);
  std::uint64_t perm_order(Perm const& a);

  // Images from 1-based disjoint cycles, e.g. {{1,2,3},{4,5}}.
  Perm from_cycles(std::size_t n, std::vector<std::vector<std::size_t>> const& cycles);

}  // namespace ctfuse::groupcore
