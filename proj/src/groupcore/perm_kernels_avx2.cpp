#include <cstring>

#include "ctfuse/groupcore/perm.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace ctfuse::groupcore::kernels {

#if defined(__AVX2__)

  // Same scheme as the SSSE3 kernel, 32 indices per step.  vpshufb works per
  // 128-bit lane, so each table is broadcast to both lanes.
  void compose_avx2(Point const* a, Point const* b, Point* out, std::size_t n) {
    alignas(32) Point table[max_degree] = {};
    std::memcpy(table, b, n);
    std::size_t const blocks = (n + 15) / 16;
    __m256i           tables[max_degree / 16];
    for (std::size_t k = 0; k < blocks; ++k) {
      tables[k] = _mm256_broadcastsi128_si256(
          _mm_load_si128(reinterpret_cast<__m128i const*>(table + 16 * k)));
    }
    __m256i const nibble = _mm256_set1_epi8(0x0f);
    for (std::size_t i = 0; i < n; i += 32) {
      alignas(32) Point idx_buf[32] = {};
      std::size_t const len         = n - i < 32 ? n - i : 32;
      std::memcpy(idx_buf, a + i, len);
      __m256i const idx = _mm256_load_si256(reinterpret_cast<__m256i const*>(idx_buf));
      __m256i const lo  = _mm256_and_si256(idx, nibble);
      __m256i const hi  = _mm256_and_si256(_mm256_srli_epi16(idx, 4), nibble);
      __m256i       res = _mm256_setzero_si256();
      for (std::size_t k = 0; k < blocks; ++k) {
        __m256i const m = _mm256_cmpeq_epi8(hi, _mm256_set1_epi8(static_cast<char>(k)));
        res = _mm256_or_si256(res, _mm256_and_si256(m, _mm256_shuffle_epi8(tables[k], lo)));
      }
      if (len == 32) {
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), res);
      } else {
        alignas(32) Point tmp[32];
        _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), res);
        std::memcpy(out + i, tmp, len);
      }
    }
  }

#else

  void compose_avx2(Point const* a, Point const* b, Point* out, std::size_t n) {
    compose_scalar(a, b, out, n);
  }

#endif

}  // namespace ctfuse::groupcore::kernels
