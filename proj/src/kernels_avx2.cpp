#include "sumprod/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define SUMPROD_X86 1
#endif

#if defined(SUMPROD_X86) && defined(__AVX2__)

#include <immintrin.h>

namespace sumprod::kernels {
namespace {

// Byte-nibble LUT popcount, partial sums folded through psadbw into u64 lanes.
inline __m256i popcnt256(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                       2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

void v_or(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_or_si256(a, b));
  }
  for (; i < n; ++i) d[i] |= s[i];
}

void v_and(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) d[i] &= s[i];
}

void v_andnot(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
    // andnot computes ~first & second
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_andnot_si256(b, a));
  }
  for (; i < n; ++i) d[i] &= ~s[i];
}

std::uint64_t v_pop(const std::uint64_t* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, popcnt256(v));
  }
  std::uint64_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return c;
}

std::uint64_t v_and_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcnt256(_mm256_and_si256(x, y)));
  }
  std::uint64_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

std::uint64_t v_andnot_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcnt256(_mm256_andnot_si256(y, x)));
  }
  std::uint64_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & ~b[i]));
  return c;
}

bool v_eq(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(_mm256_xor_si256(x, y), _mm256_xor_si256(x, y))) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool v_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(_mm256_andnot_si256(y, x), _mm256_andnot_si256(y, x))) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool v_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(x, y)) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops = {"avx2",      v_or, v_and,    v_andnot,     v_pop,
                          v_and_pop,   v_andnot_pop,   v_eq, v_subset, v_intersects};
  return &ops;
}

}  // namespace sumprod::kernels

#else

namespace sumprod::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace sumprod::kernels

#endif
