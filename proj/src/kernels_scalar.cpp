#include "sumprod/kernels.hpp"

// Reference kernels. Plain word loops; the SIMD variants are equivalence-tested
// against these.

namespace sumprod::kernels {
namespace {

void s_or(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] |= s[i];
}

void s_and(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] &= s[i];
}

void s_andnot(std::uint64_t* d, const std::uint64_t* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] &= ~s[i];
}

std::uint64_t s_pop(const std::uint64_t* a, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
  return c;
}

std::uint64_t s_and_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

std::uint64_t s_andnot_pop(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    c += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & ~b[i]));
  return c;
}

bool s_eq(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool s_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool s_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {"scalar", s_or,         s_and, s_andnot, s_pop,
                          s_and_pop, s_andnot_pop, s_eq,  s_subset, s_intersects};
  return ops;
}

}  // namespace sumprod::kernels
