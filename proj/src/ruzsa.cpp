#include "sumprod/ruzsa.hpp"

namespace sumprod {

CoverWitness ruzsa_cover(const RSet& a, const RSet& b, CoverMode mode) {
  require(!a.empty() && !b.empty(), Errc::EmptySet, "cover requires non-empty A and B");
  require(a.ring() == b.ring(), Errc::RingMismatch, "cover over different rings");
  const RingHandle& ring = a.ring();

  // Minus mode runs the greedy step with -B; B-B is unchanged by reflection.
  RSet bset = mode == CoverMode::Plus ? b : negate_set(b);

  CoverWitness w;
  w.mode = mode;
  w.x = RSet(ring);
  w.card_b = b.card();
  Bitset used(ring->size());
  for (std::uint32_t ai : a.members()) {
    RSet tr = translate(ai, bset);
    if (!tr.bits().intersects(used)) {
      w.x.insert(ai);
      used |= tr.bits();
    }
  }
  w.bound_numerator = sumset(a, bset).card();
  w.bound = Rational::ratio(w.bound_numerator, w.card_b);
  w.covered = validate_cover(a, b, w);
  require(w.covered, Errc::InternalCheckFailed, "cover witness failed self-verification");
  return w;
}

bool validate_cover(const RSet& a, const RSet& b, const CoverWitness& w) {
  if (a.empty() || b.empty() || w.x.empty()) return false;
  RSet bset = w.mode == CoverMode::Plus ? b : negate_set(b);
  // translates x+B pairwise disjoint <=> their union has |X||B| elements
  Bitset used(a.ring()->size());
  std::uint64_t total = 0;
  for (std::uint32_t xi : w.x.members()) {
    RSet tr = translate(xi, bset);
    total += tr.card();
    used |= tr.bits();
  }
  if (used.count() != total || total != w.x.card() * b.card()) return false;
  // A subset of B-B+X
  RSet hull = sumset(difference_set(b, b), w.x);
  if (!a.is_subset_of(hull)) return false;
  // |B||X| <= |A+B| (plus) or |A-B| (minus)
  std::uint64_t bound_num =
      w.mode == CoverMode::Plus ? sumset(a, b).card() : difference_set(a, b).card();
  if (bound_num != w.bound_numerator) return false;
  return b.card() * w.x.card() <= bound_num;
}

TriangleCheck triangle_check(const RSet& a, const RSet& b, const RSet& c) {
  require(!a.empty() && !b.empty() && !c.empty(), Errc::EmptySet,
          "triangle check requires non-empty sets");
  require(a.ring() == b.ring() && b.ring() == c.ring(), Errc::RingMismatch,
          "triangle check over different rings");
  TriangleCheck t;
  t.lhs = difference_set(a, c).card() * b.card();
  t.rhs = difference_set(a, b).card() * difference_set(b, c).card();
  t.holds = t.lhs <= t.rhs;
  return t;
}

PlunneckeCheck plunnecke_check(const RSet& a, const RSet& b, unsigned n1, unsigned n2,
                               unsigned n3, unsigned n4) {
  require(!a.empty() && !b.empty(), Errc::EmptySet, "plunnecke check requires non-empty sets");
  require(a.ring() == b.ring(), Errc::RingMismatch, "plunnecke check over different rings");
  unsigned s = n1 + n2 + n3 + n4;
  require(s <= 8, Errc::PowerTooLarge, "n1+n2+n3+n4 must be <= 8");

  PlunneckeCheck p;
  p.exponent = s;
  p.k = rat_max(Rational::ratio(sumset(a, b).card(), a.card()),
                Rational::ratio(a.card(), b.card()));
  p.k = rat_max(p.k, Rational::integer(1));

  RSet acc = iterated(a, n1, IterOp::Sum);  // n1 = 0 gives {0}
  acc = sumset(acc, iterated(negate_set(a), n2, IterOp::Sum));
  acc = sumset(acc, iterated(b, n3, IterOp::Sum));
  acc = sumset(acc, iterated(negate_set(b), n4, IterOp::Sum));
  p.measured = acc.card();
  p.measured_over_card_a = Rational::ratio(p.measured, a.card());
  // measured <= K^s * |A|, exact via bignum (K^8 overflows native words)
  p.holds = pow_scaled_le(p.measured, static_cast<std::uint64_t>(p.k.den), s, a.card(),
                          static_cast<std::uint64_t>(p.k.num));
  return p;
}

}  // namespace sumprod
