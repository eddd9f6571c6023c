#include <cstring>

#include "ctfuse/groupcore/perm.hpp"

#if defined(__SSSE3__)
#include <tmmintrin.h>
#endif

namespace ctfuse::groupcore::kernels {

#if defined(__SSSE3__)

  // b is split into 16-byte tables; pshufb looks up the low nibble of each
  // index in every table and the high nibble selects which result to keep.
  void compose_ssse3(Point const* a, Point const* b, Point* out, std::size_t n) {
    alignas(16) Point table[max_degree] = {};
    std::memcpy(table, b, n);
    std::size_t const blocks = (n + 15) / 16;
    __m128i const     nibble = _mm_set1_epi8(0x0f);
    for (std::size_t i = 0; i < n; i += 16) {
      alignas(16) Point idx_buf[16] = {};
      std::size_t const len         = n - i < 16 ? n - i : 16;
      std::memcpy(idx_buf, a + i, len);
      __m128i const idx = _mm_load_si128(reinterpret_cast<__m128i const*>(idx_buf));
      __m128i const lo  = _mm_and_si128(idx, nibble);
      __m128i const hi  = _mm_and_si128(_mm_srli_epi16(idx, 4), nibble);
      __m128i       res = _mm_setzero_si128();
      for (std::size_t k = 0; k < blocks; ++k) {
        __m128i const t  = _mm_load_si128(reinterpret_cast<__m128i const*>(table + 16 * k));
        __m128i const m  = _mm_cmpeq_epi8(hi, _mm_set1_epi8(static_cast<char>(k)));
        res              = _mm_or_si128(res, _mm_and_si128(m, _mm_shuffle_epi8(t, lo)));
      }
      if (len == 16) {
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), res);
      } else {
        alignas(16) Point tmp[16];
        _mm_store_si128(reinterpret_cast<__m128i*>(tmp), res);
        std::memcpy(out + i, tmp, len);
      }
    }
  }

#else

  void compose_ssse3(Point const* a, Point const* b, Point* out, std::size_t n) {
    compose_scalar(a, b, out, n);
  }

#endif

}  // namespace ctfuse::groupcore::kernels
