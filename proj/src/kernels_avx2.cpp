// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.
#include <immintrin.h>

#include "automizer/kernels.hpp"

namespace automizer::kernels::avx2 {

void gather(const uint32_t* table, const uint32_t* index, uint32_t* out,
            std::size_t n) {
  std::size_t i = 0;
  const int* base = reinterpret_cast<const int*>(table);
  for (; i + 8 <= n; i += 8) {
    __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(index + i));
    __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = table[index[i]];
}

void table_multiply(const uint32_t* mul, std::size_t order, const uint32_t* a,
                    const uint32_t* b, uint32_t* out, std::size_t n) {
  std::size_t i = 0;
  const int* base = reinterpret_cast<const int*>(mul);
  const __m256i ord = _mm256_set1_epi32(static_cast<int>(order));
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(va, ord), vb);
    __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = mul[a[i] * order + b[i]];
}

void bits_and(const uint64_t* a, const uint64_t* b, uint64_t* out,
              std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void bits_or(const uint64_t* a, const uint64_t* b, uint64_t* out,
             std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

std::size_t popcount(const uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

bool bits_subset(const uint64_t* a, const uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(va, _mm256_andnot_si256(vb, _mm256_set1_epi64x(-1))))
      return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace automizer::kernels::avx2
