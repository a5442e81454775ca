#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumprod/ruzsa.hpp"
#include "support.hpp"

using namespace sumprod;
using namespace testsupport;

TEST_CASE("greedy cover on Z/7, hand-simulated") {
  RingHandle z7 = build_ring(RingSpec::cyclic(7));
  RSet a = RSet::full(z7);
  RSet b = make_set(z7, {0, 1});
  CoverWitness w = ruzsa_cover(a, b, CoverMode::Plus);
  // ascending scan: 0 accepted, 1 collides, 2 accepted, 3 collides, 4 accepted
  CHECK(to_set(w.x) == std::set<std::uint32_t>{0, 2, 4});
  CHECK(w.covered);
  CHECK(w.bound == Rational::of(7, 2));
  CHECK(validate_cover(a, b, w));
}

TEST_CASE("cover with B = A keeps only the least element") {
  SplitMix64 rng(31);
  RingHandle z50 = build_ring(RingSpec::cyclic(50));
  for (int rep = 0; rep < 10; ++rep) {
    RSet a = random_subset(z50, 2 + rng.below(10), rng);
    CoverWitness w = ruzsa_cover(a, a, CoverMode::Plus);
    // any further a' satisfies a'-min(A) in A-A, so its translate collides
    CHECK(to_set(w.x) == std::set<std::uint32_t>{a.min_element()});
  }
}

TEST_CASE("cover with singleton B returns X = A") {
  RingHandle z11 = build_ring(RingSpec::cyclic(11));
  RSet a = make_set(z11, {1, 3, 8});
  RSet b = make_set(z11, {5});
  CoverWitness w = ruzsa_cover(a, b, CoverMode::Plus);
  CHECK(to_set(w.x) == to_set(a));
  CHECK(w.bound == Rational::integer(3));  // |A+B|/1 = |A|
}

TEST_CASE("cover witnesses validate over random pairs, both modes") {
  SplitMix64 rng(0xC0FFEE);
  for (const char* token : {"z101", "gf64", "m2_2"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    for (int rep = 0; rep < 25; ++rep) {
      RSet a = random_subset(r, 1 + rng.below(12), rng);
      RSet b = random_subset(r, 1 + rng.below(12), rng);
      CoverMode mode = rep % 2 ? CoverMode::Plus : CoverMode::Minus;
      CoverWitness w = ruzsa_cover(a, b, mode);
      CHECK(w.covered);
      CHECK(validate_cover(a, b, w));
      CHECK(le_times(w.x.card(), w.bound, 1));  // |X| <= |A±B|/|B|
    }
  }
}

TEST_CASE("triangle inequality fixtures") {
  RingHandle z10 = build_ring(RingSpec::cyclic(10));
  RSet ab = make_set(z10, {0, 1});
  TriangleCheck t = triangle_check(ab, ab, ab);
  CHECK(t.lhs == 6);   // |A-C|*|B| = 3*2
  CHECK(t.rhs == 9);   // 3*3
  CHECK(t.holds);

  RSet whole = RSet::full(z10);
  RSet a = make_set(z10, {2, 5});
  TriangleCheck t2 = triangle_check(a, whole, a);
  CHECK(t2.rhs == 100);
  CHECK(t2.holds);

  RSet single = make_set(z10, {3});
  RSet b = make_set(z10, {1, 4, 6});
  TriangleCheck t3 = triangle_check(single, b, single);
  CHECK(t3.lhs == b.card());
  CHECK(t3.holds);
}

TEST_CASE("triangle inequality over random triples") {
  SplitMix64 rng(0x7121);
  for (const char* token : {"z101", "gf64"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    for (int rep = 0; rep < 100; ++rep) {
      RSet a = random_subset(r, 1 + rng.below(14), rng);
      RSet b = random_subset(r, 1 + rng.below(14), rng);
      RSet c = random_subset(r, 1 + rng.below(14), rng);
      CHECK(triangle_check(a, b, c).holds);
    }
  }
}

TEST_CASE("plunnecke fixtures") {
  RingHandle z100 = build_ring(RingSpec::cyclic(100));
  RSet a = make_set(z100, {0, 1, 2});
  PlunneckeCheck p = plunnecke_check(a, a, 2, 2, 0, 0);
  CHECK(p.measured == 9);            // |2A-2A| = {-4..4}
  CHECK(p.k == Rational::of(5, 3));  // |A+A| = 5
  CHECK(p.holds);                    // 9 <= (5/3)^4 * 3 ~ 23.1

  // subgroup: K = 1, measured = |A| = budget
  RSet sub = make_set(z100, {0, 25, 50, 75});
  PlunneckeCheck ps = plunnecke_check(sub, sub, 2, 2, 0, 0);
  CHECK(ps.k == Rational::integer(1));
  CHECK(ps.measured == 4);
  CHECK(ps.holds);

  CHECK_THROWS_AS((void)plunnecke_check(a, a, 4, 4, 1, 0), Error);  // sum > 8
}

TEST_CASE("plunnecke budget over random sets") {
  SplitMix64 rng(4242);
  RingHandle z101 = build_ring(RingSpec::cyclic(101));
  for (int rep = 0; rep < 40; ++rep) {
    RSet a = random_subset(z101, 2 + rng.below(9), rng);
    RSet b = random_subset(z101, 2 + rng.below(9), rng);
    CHECK(plunnecke_check(a, b, 1, 1, 0, 0).holds);
    CHECK(plunnecke_check(a, b, 1, 1, 1, 1).holds);
    CHECK(plunnecke_check(a, a, 2, 2, 0, 0).holds);
  }
}
