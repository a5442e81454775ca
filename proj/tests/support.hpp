#pragma once

#include <set>
#include <vector>

#include "sumprod/rset.hpp"

namespace testsupport {

using namespace sumprod;

// Independent oracle: pairwise set operation through std::set and direct ring
// arithmetic, never touching the bitset kernels.
inline std::set<std::uint32_t> naive_op(const FiniteRing& r,
                                        const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b, char op) {
  std::set<std::uint32_t> out;
  for (std::uint32_t x : a) {
    for (std::uint32_t y : b) {
      switch (op) {
        case '+': out.insert(r.add(x, y)); break;
        case '-': out.insert(r.add(x, r.neg(y))); break;
        case '*': out.insert(r.mul(x, y)); break;
      }
    }
  }
  return out;
}

inline std::set<std::uint32_t> to_set(const RSet& s) {
  auto v = s.members();
  return std::set<std::uint32_t>(v.begin(), v.end());
}

// n distinct elements drawn by rejection from a deterministic stream
inline RSet random_subset(const RingHandle& ring, std::size_t n, SplitMix64& rng) {
  RSet s(ring);
  while (s.card() < n) s.insert(rng.below(ring->size()));
  return s;
}

inline RSet make_set(const RingHandle& ring, std::initializer_list<std::uint32_t> xs) {
  return RSet::of(ring, std::vector<std::uint32_t>(xs));
}

}  // namespace testsupport
