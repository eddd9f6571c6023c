#include <atomic>
#include <cstdlib>
#include <cstring>
#include <numeric>

#include "ctfuse/error.hpp"
#include "ctfuse/groupcore/perm.hpp"

namespace ctfuse::groupcore {

  namespace kernels {

    void compose_scalar(Point const* a, Point const* b, Point* out, std::size_t n) {
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = b[a[i]];
      }
    }

  }  // namespace kernels

  namespace {

    Kernel best_kernel() {
#if defined(__x86_64__) || defined(__i386__)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2")) {
        return Kernel::avx2;
      }
      if (__builtin_cpu_supports("ssse3")) {
        return Kernel::ssse3;
      }
#endif
      return Kernel::scalar;
    }

    Kernel initial_kernel() {
      if (char const* env = std::getenv("CTFUSE_KERNEL")) {
        for (auto k : {Kernel::scalar, Kernel::ssse3, Kernel::avx2}) {
          if (kernel_name(k) == env && kernel_supported(k)) {
            return k;
          }
        }
      }
      return best_kernel();
    }

    std::atomic<Kernel>& current() {
      static std::atomic<Kernel> k{initial_kernel()};
      return k;
    }

  }  // namespace

  bool kernel_supported(Kernel k) {
    switch (k) {
      case Kernel::scalar:
        return true;
#if defined(__x86_64__) || defined(__i386__)
      case Kernel::ssse3:
        __builtin_cpu_init();
        return __builtin_cpu_supports("ssse3");
      case Kernel::avx2:
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2");
#endif
      default:
        return false;
    }
  }

  std::string kernel_name(Kernel k) {
    switch (k) {
      case Kernel::scalar:
        return "scalar";
      case Kernel::ssse3:
        return "ssse3";
      case Kernel::avx2:
        return "avx2";
    }
    return "unknown";
  }

  Kernel active_kernel() {
    return current().load();
  }

  void set_kernel(Kernel k) {
    if (!kernel_supported(k)) {
      throw PreconditionError("kernel " + kernel_name(k) + " is not supported on this CPU");
    }
    current().store(k);
  }

  ComposeFn compose_fn(Kernel k) {
    switch (k) {
      case Kernel::ssse3:
        return kernels::compose_ssse3;
      case Kernel::avx2:
        return kernels::compose_avx2;
      default:
        return kernels::compose_scalar;
    }
  }

  void compose(Point const* a, Point const* b, Point* out, std::size_t n) {
    compose_fn(active_kernel())(a, b, out, n);
  }

  Perm identity_perm(std::size_t n) {
    if (n > max_degree) {
      throw PreconditionError("degree " + std::to_string(n) + " exceeds 256");
    }
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  Perm compose(Perm const& a, Perm const& b) {
    if (a.size() != b.size()) {
      throw PreconditionError("composing permutations of different degree");
    }
    Perm out(a.size());
    compose(a.data(), b.data(), out.data(), a.size());
    return out;
  }

  Perm inverse(Perm const& a) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[a[i]] = static_cast<Point>(i);
    }
    return out;
  }

  Perm power(Perm const& a, std::int64_t k) {
    Perm base = k < 0 ? inverse(a) : a;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    Perm result = identity_perm(a.size());
    while (e != 0) {
      if (e & 1) {
        result = compose(result, base);
      }
      base = compose(base, base);
      e >>= 1;
    }
    return result;
  }

  bool is_identity(Perm const& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool is_permutation(Perm const& a) {
    if (a.size() > max_degree) {
      return false;
    }
    std::vector<char> seen(a.size(), 0);
    for (auto x : a) {
      if (x >= a.size() || seen[x]) {
        return false;
      }
      seen[x] = 1;
    }
    return true;
  }

  std::uint64_t perm_order(Perm const& a) {
    std::vector<char> seen(a.size(), 0);
    std::uint64_t     order = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (seen[i]) {
        continue;
      }
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = a[j]) {
        seen[j] = 1;
        ++len;
      }
      order = std::lcm(order, len);
    }
    return order;
  }

  Perm from_cycles(std::size_t n, std::vector<std::vector<std::size_t>> const& cycles) {
    Perm p = identity_perm(n);
    for (auto const& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        std::size_t from = cyc[i], to = cyc[(i + 1) % cyc.size()];
        if (from == 0 || from > n || to == 0 || to > n) {
          throw PreconditionError("cycle point out of range");
        }
        p[from - 1] = static_cast<Point>(to - 1);
      }
    }
    if (!is_permutation(p)) {
      throw PreconditionError("cycles are not disjoint");
    }
    return p;
  }

}  // namespace ctfuse::groupcore
