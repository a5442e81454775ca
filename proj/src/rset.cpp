#include "sumprod/rset.hpp"

#include <algorithm>
#include <sstream>

namespace sumprod {

namespace {

void check_same_ring(const RSet& a, const RSet& b) {
  require(a.ring() == b.ring(), Errc::RingMismatch, "operands over different rings");
}

}  // namespace

RSet RSet::of(RingHandle ring, const std::vector<std::uint32_t>& indices) {
  RSet s(std::move(ring));
  for (std::uint32_t i : indices) s.insert(i);
  return s;
}

RSet RSet::full(RingHandle ring) {
  RSet s(ring);
  for (std::uint32_t i = 0; i < ring->size(); ++i) s.bits_.set(i);
  return s;
}

RSet RSet::singleton(RingHandle ring, std::uint32_t x) {
  RSet s(std::move(ring));
  s.insert(x);
  return s;
}

std::uint32_t RSet::min_element() const {
  std::int64_t f = bits_.first_set();
  require(f >= 0, Errc::EmptySet, "min of empty set");
  return static_cast<std::uint32_t>(f);
}

bool RSet::is_subset_of(const RSet& o) const {
  check_same_ring(*this, o);
  return bits_.is_subset_of(o.bits());
}

std::string RSet::str() const {
  std::string out = "{";
  bool first = true;
  bits_.for_each([&](std::uint32_t i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

RSet parse_set_literal(const RingHandle& ring, const std::string& text) {
  std::size_t l = text.find('{'), r = text.rfind('}');
  require(l != std::string::npos && r != std::string::npos && l < r, Errc::ConfigParse,
          "set literal must look like {1,2,3}: " + text);
  RSet s(ring);
  std::string body = text.substr(l + 1, r - l - 1);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t first = tok.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::size_t last = tok.find_last_not_of(" \t");
    try {
      s.insert(static_cast<std::uint32_t>(std::stoul(tok.substr(first, last - first + 1))));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::ConfigParse, "bad set element: " + tok);
    }
  }
  return s;
}

namespace {

// Core kernel: out |= { f(a,b) : a in A, b in B }, iterating members of the
// smaller operand outermost when f is symmetric.
template <class F>
RSet combine(const RSet& a, const RSet& b, F&& f) {
  check_same_ring(a, b);
  RSet out(a.ring());
  if (a.empty() || b.empty()) return out;
  Bitset res(a.ring()->size());
  std::vector<std::uint32_t> am = a.members();
  std::vector<std::uint32_t> bm = b.members();
  for (std::uint32_t x : am)
    for (std::uint32_t y : bm) res.set(f(x, y));
  return RSet(a.ring(), std::move(res));
}

}  // namespace

RSet sumset(const RSet& a, const RSet& b) {
  const FiniteRing& r = *a.ring();
  // swap so the outer loop runs over the smaller operand
  const RSet& s = a.card() <= b.card() ? a : b;
  const RSet& t = a.card() <= b.card() ? b : a;
  return combine(s, t, [&](std::uint32_t x, std::uint32_t y) { return r.add(x, y); });
}

RSet difference_set(const RSet& a, const RSet& b) {
  const FiniteRing& r = *a.ring();
  return combine(a, b, [&](std::uint32_t x, std::uint32_t y) { return r.sub(x, y); });
}

RSet product_set(const RSet& a, const RSet& b) {
  const FiniteRing& r = *a.ring();
  return combine(a, b, [&](std::uint32_t x, std::uint32_t y) { return r.mul(x, y); });
}

RSet negate_set(const RSet& a) {
  Bitset res(a.ring()->size());
  a.bits().for_each([&](std::uint32_t x) { res.set(a.ring()->neg(x)); });
  return RSet(a.ring(), std::move(res));
}

RSet set_union(const RSet& a, const RSet& b) {
  check_same_ring(a, b);
  Bitset res = a.bits();
  res |= b.bits();
  return RSet(a.ring(), std::move(res));
}

RSet set_intersection(const RSet& a, const RSet& b) {
  check_same_ring(a, b);
  Bitset res = a.bits();
  res &= b.bits();
  return RSet(a.ring(), std::move(res));
}

RSet set_minus(const RSet& a, const RSet& b) {
  check_same_ring(a, b);
  Bitset res = a.bits();
  res.and_not(b.bits());
  return RSet(a.ring(), std::move(res));
}

RSet iterated(const RSet& a, std::uint32_t n, IterOp op) {
  if (op == IterOp::Sum) {
    if (n == 0) return RSet::singleton(a.ring(), 0);  // 0A = {0}
    RSet acc = a;
    for (std::uint32_t i = 1; i < n; ++i) acc = sumset(acc, a);
    return acc;
  }
  require(n >= 1, Errc::ZeroProductPower, "A^n requires n >= 1");
  RSet acc = a;
  for (std::uint32_t i = 1; i < n; ++i) acc = product_set(acc, a);
  return acc;
}

RSet dilate(std::uint32_t r, const RSet& a, Side side) {
  a.ring()->check_index(r);
  const FiniteRing& ring = *a.ring();
  Bitset res(ring.size());
  a.bits().for_each([&](std::uint32_t x) {
    res.set(side == Side::Left ? ring.mul(r, x) : ring.mul(x, r));
  });
  return RSet(a.ring(), std::move(res));
}

RSet translate(std::uint32_t r, const RSet& a) {
  a.ring()->check_index(r);
  const FiniteRing& ring = *a.ring();
  Bitset res(ring.size());
  a.bits().for_each([&](std::uint32_t x) { res.set(ring.add(r, x)); });
  return RSet(a.ring(), std::move(res));
}

std::uint64_t representation_count(const RSet& a, const RSet& b, std::uint32_t x, PairOp op) {
  check_same_ring(a, b);
  a.ring()->check_index(x);
  const FiniteRing& ring = *a.ring();
  std::uint64_t count = 0;
  if (op == PairOp::Sum) {
    // a + b = x  <=>  b = x - a
    a.bits().for_each([&](std::uint32_t u) {
      if (b.contains(ring.sub(x, u))) ++count;
    });
    return count;
  }
  std::vector<std::uint32_t> bm = b.members();
  a.bits().for_each([&](std::uint32_t u) {
    for (std::uint32_t v : bm)
      if (ring.mul(u, v) == x) ++count;
  });
  return count;
}

std::uint64_t additive_energy(const RSet& a, const RSet& b) {
  check_same_ring(a, b);
  const FiniteRing& ring = *a.ring();
  std::vector<std::uint64_t> reps(ring.size(), 0);
  std::vector<std::uint32_t> bm = b.members();
  a.bits().for_each([&](std::uint32_t u) {
    for (std::uint32_t v : bm) ++reps[ring.add(u, v)];
  });
  std::uint64_t energy = 0;
  for (std::uint64_t c : reps) energy += c * c;
  return energy;
}

GrowthReport growth_report(const RSet& a) {
  require(!a.empty(), Errc::EmptySet, "growth report of empty set");
  GrowthReport g;
  g.card_a = a.card();
  RSet aa = product_set(a, a);
  RSet diff = difference_set(a, a);
  g.size_sum = sumset(a, a).card();
  g.size_diff = diff.card();
  g.size_prod = aa.card();
  g.size_prod_diff = difference_set(aa, aa).card();
  g.size_sum_prod = sumset(a, aa).card();
  g.ratio_sum = Rational::ratio(g.size_sum, g.card_a);
  g.ratio_diff = Rational::ratio(g.size_diff, g.card_a);
  g.ratio_prod = Rational::ratio(g.size_prod, g.card_a);
  g.ratio_prod_diff = Rational::ratio(g.size_prod_diff, g.card_a);
  g.ratio_sum_prod = Rational::ratio(g.size_sum_prod, g.card_a);
  g.zd_in_diff = diff.bits().and_not_count(a.ring()->non_zero_divisors());
  g.k_inhom = rat_max(Rational::integer(1),
                      rat_max(Rational::ratio(g.size_sum_prod, g.card_a),
                              Rational::ratio(g.card_a, g.size_prod)));
  g.k_hom = rat_max(Rational::integer(1),
                    rat_max(Rational::ratio(g.size_prod_diff, g.card_a),
                            Rational::ratio(g.card_a, g.size_prod)));
  return g;
}

}  // namespace sumprod
