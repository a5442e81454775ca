#include "sumprod/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

namespace sumprod::kernels {
namespace {

void v_or(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t a = vld1q_u64(d + i);
    uint64x2_t b = vld1q_u64(s + i);
    vst1q_u64(d + i, vorrq_u64(a, b));
  }
  for (; i < n; ++i) d[i] |= s[i];
}

void v_and(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t a = vld1q_u64(d + i);
    uint64x2_t b = vld1q_u64(s + i);
    vst1q_u64(d + i, vandq_u64(a, b));
  }
  for (; i < n; ++i) d[i] &= s[i];
}

void v_andnot(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t a = vld1q_u64(d + i);
    uint64x2_t b = vld1q_u64(s + i);
    vst1q_u64(d + i, vbicq_u64(a, b));
  }
  for (; i < n; ++i) d[i] &= ~s[i];
}

inline std::uint64_t pop_u64x2(uint64x2_t v) {
  uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
  return vaddvq_u8(bytes);
}

std::uint64_t v_pop(const std::uint64_t* a, std::size_t n) {
  std::uint64_t c = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) c += pop_u64x2(vld1q_u64(a + i));
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return c;
}

std::uint64_t v_and_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) c += pop_u64x2(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

std::uint64_t v_andnot_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) c += pop_u64x2(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & ~b[i]));
  return c;
}

bool v_eq(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(x, 0) | vgetq_lane_u64(x, 1)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool v_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(x, 0) | vgetq_lane_u64(x, 1)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool v_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(x, 0) | vgetq_lane_u64(x, 1)) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace

const Ops* neon_ops() {
  static const Ops ops = {"neon",      v_or, v_and,    v_andnot,     v_pop,
                          v_and_pop,   v_andnot_pop,   v_eq, v_subset, v_intersects};
  return &ops;
}

}  // namespace sumprod::kernels

#else

namespace sumprod::kernels {
const Ops* neon_ops() { return nullptr; }
}  // namespace sumprod::kernels

#endif
