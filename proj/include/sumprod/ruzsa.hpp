#pragma once

#include "sumprod/rset.hpp"

namespace sumprod {

enum class CoverMode { Plus, Minus };

/// Covering witness: A is contained in B-B+X with |B||X| bounded by |A+B|
/// (plus mode) or |A-B| (minus mode), translates of B (or -B) through X
/// pairwise disjoint.
struct CoverWitness {
  CoverMode mode = CoverMode::Plus;
  RSet x;
  std::uint64_t bound_numerator = 0;  // |A+B| or |A-B|
  std::uint64_t card_b = 0;
  Rational bound;  // bound_numerator / |B|
  bool covered = false;
};

// Greedy scan of A in ascending index order; the witness is re-verified
// before returning.
CoverWitness ruzsa_cover(const RSet& a, const RSet& b, CoverMode mode);

// Independent re-check of all CoverWitness invariants from scratch.
bool validate_cover(const RSet& a, const RSet& b, const CoverWitness& w);

struct TriangleCheck {
  std::uint64_t lhs = 0;  // |A-C| * |B|
  std::uint64_t rhs = 0;  // |A-B| * |B-C|
  bool holds = false;
};

TriangleCheck triangle_check(const RSet& a, const RSet& b, const RSet& c);

struct PlunneckeCheck {
  std::uint64_t measured = 0;  // |n1 A - n2 A + n3 B - n4 B|
  Rational k;                  // max(|A+B|/|A|, |A|/|B|)
  unsigned exponent = 0;       // n1+n2+n3+n4
  bool holds = false;          // measured <= K^exponent * |A|
  Rational measured_over_card_a;
};

PlunneckeCheck plunnecke_check(const RSet& a, const RSet& b, unsigned n1, unsigned n2,
                               unsigned n3, unsigned n4);

}  // namespace sumprod
