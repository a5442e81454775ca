#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumprod/ring.hpp"

namespace sumprod {

enum class Side { Left, Right };
enum class PairOp { Sum, Product };

/// A finite subset of a ring: the universal operand of all set arithmetic.
/// Dense bitset over element indices; value semantics, never mutated by ops.
class RSet {
 public:
  RSet() = default;
  explicit RSet(RingHandle ring) : ring_(std::move(ring)), bits_(ring_->size()) {}
  RSet(RingHandle ring, Bitset bits) : ring_(std::move(ring)), bits_(std::move(bits)) {}

  static RSet of(RingHandle ring, const std::vector<std::uint32_t>& indices);
  static RSet full(RingHandle ring);
  static RSet singleton(RingHandle ring, std::uint32_t x);

  const RingHandle& ring() const { return ring_; }
  const Bitset& bits() const { return bits_; }
  std::uint64_t card() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(std::uint32_t x) const { return bits_.test(x); }
  void insert(std::uint32_t x) {
    ring_->check_index(x);
    bits_.set(x);
  }
  std::vector<std::uint32_t> members() const { return bits_.to_indices(); }
  // smallest member index; EmptySet if none
  std::uint32_t min_element() const;

  bool operator==(const RSet& o) const { return ring_ == o.ring_ && bits_ == o.bits_; }
  bool is_subset_of(const RSet& o) const;

  std::string str() const;  // "{i1,i2,...}"

 private:
  RingHandle ring_;
  Bitset bits_;
};

// `{1,2,3}` index-list literal
RSet parse_set_literal(const RingHandle& ring, const std::string& text);

RSet sumset(const RSet& a, const RSet& b);
RSet difference_set(const RSet& a, const RSet& b);
RSet product_set(const RSet& a, const RSet& b);
RSet negate_set(const RSet& a);
RSet set_union(const RSet& a, const RSet& b);
RSet set_intersection(const RSet& a, const RSet& b);
RSet set_minus(const RSet& a, const RSet& b);

enum class IterOp { Sum, Product };
// nA (n >= 0, 0A = {0}) or A^n (n >= 1)
RSet iterated(const RSet& a, std::uint32_t n, IterOp op);

RSet dilate(std::uint32_t r, const RSet& a, Side side);
// translate { r + a : a in A }
RSet translate(std::uint32_t r, const RSet& a);

std::uint64_t representation_count(const RSet& a, const RSet& b, std::uint32_t x, PairOp op);
std::uint64_t additive_energy(const RSet& a, const RSet& b);

struct GrowthReport {
  std::uint64_t card_a = 0;
  std::uint64_t size_sum = 0;        // |A+A|
  std::uint64_t size_diff = 0;       // |A-A|
  std::uint64_t size_prod = 0;       // |A*A|
  std::uint64_t size_prod_diff = 0;  // |A*A - A*A|
  std::uint64_t size_sum_prod = 0;   // |A + A*A|
  Rational ratio_sum, ratio_diff, ratio_prod, ratio_prod_diff, ratio_sum_prod;
  std::uint64_t zd_in_diff = 0;      // |(A-A) \ R^*|
  Rational k_inhom, k_hom;
};

GrowthReport growth_report(const RSet& a);

}  // namespace sumprod
