#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumprod/freiman.hpp"
#include "support.hpp"

using namespace sumprod;
using namespace testsupport;

TEST_CASE("graded groups of a dilated subfield of GF(9)") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet a = make_set(gf9, {3, 6});  // {alpha, 2 alpha}
  GradedGroups gg = compute_graded_groups(a, 6);
  CHECK(gg.stable_size == 3);
  CHECK(gg.n0 == 1);
  // G_n alternates between alpha*F_3 and F_3, all of size 3
  CHECK(to_set(gg.at(1)) == std::set<std::uint32_t>{0, 3, 6});
  CHECK(to_set(gg.at(2)) == std::set<std::uint32_t>{0, 1, 2});
  CHECK(to_set(gg.at(3)) == std::set<std::uint32_t>{0, 3, 6});
  for (std::uint32_t n = 1; n <= 6; ++n) CHECK(gg.at(n).card() == 3);
}

TEST_CASE("graded groups of a generating set cover the whole ring") {
  RingHandle z7 = build_ring(RingSpec::cyclic(7));
  RSet a = make_set(z7, {1, 2, 4});
  GradedGroups gg = compute_graded_groups(a, 4);
  CHECK(gg.stable_size == 7);
  CHECK(gg.n0 == 1);
  CHECK(gg.at(1).card() == 7);
}

TEST_CASE("no stabilization within n_max is an error") {
  RingHandle z8 = build_ring(RingSpec::cyclic(8));
  RSet a = make_set(z8, {2});  // G_1 = {0,2,4,6}, G_2 = {0,4}: still shrinking
  try {
    (void)compute_graded_groups(a, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoStabilization);
  }
  // with a longer horizon the chain bottoms out at {0}
  GradedGroups gg = compute_graded_groups(a, 5);
  CHECK(gg.stable_size == 1);
}

TEST_CASE("freiman model of the dilated subfield") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet a = make_set(gf9, {3, 6});
  GradedGroups gg = compute_graded_groups(a, 6);
  FreimanModel m = build_freiman_model(a, gg, 3, 6);
  CHECK(m.stable_size == 3);
  CHECK(m.n0 == 1);
  CHECK(m.carrier == std::vector<std::uint32_t>{0, 3, 6});
  CHECK(m.identity_rank == 1);  // alpha sits at rank 1 of {0, 3, 6}
  CHECK(m.checks.all());
  // commutative input: the twist is trivial
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(m.phi[i] == i);
  // R0 is a 3-element field: the transported tables are F_3 up to relabeling
  CHECK(check_ring_axioms(*m.r0).all_pass);
  CHECK(is_finite_field(*m.r0));
}

TEST_CASE("freiman model of a subring input collapses to the subring") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet f3 = make_set(gf9, {0, 1, 2});
  GradedGroups gg = compute_graded_groups(f3, 6);
  CHECK(gg.stable_size == 3);
  FreimanModel m = build_freiman_model(f3, gg, 1, 6);
  CHECK(m.carrier == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(m.identity_rank == 1);
  CHECK(m.checks.all());
  // iota_1 is the identity on the carrier
  for (const auto& [g, w] : m.iota[0]) CHECK(w == static_cast<std::uint32_t>(g));
  // transported multiplication is plain F_3 multiplication
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j) CHECK(m.r0->mul(i, j) == i * j % 3);
}

TEST_CASE("twisted model: antidiagonal matrices over F_2") {
  // A = J * S for S the diagonal subring of M_2(F_2) and J the swap matrix;
  // conjugation by J swaps the diagonal entries, so phi is a genuine twist.
  RingHandle m2 = build_ring(RingSpec::matrix(2, RingSpec::cyclic(2)));
  std::uint32_t j_swap = m2->matrix_of({0, 1, 1, 0});
  RSet a(m2);
  for (std::uint32_t x = 0; x < 2; ++x)
    for (std::uint32_t y = 0; y < 2; ++y) a.insert(m2->matrix_of({0, x, y, 0}));
  CHECK(a.card() == 4);

  GradedGroups gg = compute_graded_groups(a, 6);
  CHECK(gg.stable_size == 4);
  CHECK(gg.n0 == 1);
  FreimanModel m = build_freiman_model(a, gg, j_swap, 6);
  CHECK(m.checks.all());
  CHECK(m.stable_size == 4);
  CHECK(check_ring_axioms(*m.r0).all_pass);
  // the twist is an order-2 automorphism, not the identity
  bool nontrivial = false;
  for (std::uint32_t i = 0; i < 4; ++i) {
    CHECK(m.phi[m.phi[i]] == i);
    if (m.phi[i] != i) nontrivial = true;
  }
  CHECK(nontrivial);
  // R0 is isomorphic to the diagonal subring F_2 x F_2: commutative, unital,
  // with exactly two idempotent zero divisors
  CHECK(m.r0->commutative());
  std::uint32_t zd_count = 0;
  for (std::uint32_t i = 0; i < 4; ++i)
    if (m.r0->is_zero_divisor(i)) ++zd_count;
  CHECK(zd_count == 3);  // 0 and the two idempotents
}

TEST_CASE("model rejects a bad pivot") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet a = make_set(gf9, {3, 6});
  GradedGroups gg = compute_graded_groups(a, 6);
  try {
    (void)build_freiman_model(a, gg, 1, 6);  // 1 is not in A-A = {0, 3, 6}
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotNonZeroDivisor);
  }
}

TEST_CASE("general homogeneous pipeline on the dilated subfield") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet a = make_set(gf9, {3, 6});
  GeneralOutcome out = homogeneous_structure_general(
      a, Rational::of(3, 2), 6, ZdPolicy::explicit_threshold(Rational::of(3, 4)));
  REQUIRE(out.is_model());
  CHECK(out.model().stable_size == 3);
  CHECK(out.ratio == Rational::of(3, 2));
  CHECK(out.model().a_elt == 3);  // smallest index in (A-A) ∩ R^*
}

TEST_CASE("general pipeline takes the zero-divisor branch in F_3 x F_3") {
  RingHandle r = build_ring(RingSpec::product({RingSpec::cyclic(3), RingSpec::cyclic(3)}));
  RSet a = make_set(r, {4, 5});
  GeneralOutcome out = homogeneous_structure_general(a, Rational::of(3, 2), 6);
  REQUIRE(!out.is_model());
  CHECK(out.cert().is_zd_rich());
}

TEST_CASE("subfield input gives ratio 1") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet f3 = make_set(gf9, {0, 1, 2});
  GeneralOutcome out = homogeneous_structure_general(
      f3, Rational::integer(1), 6, ZdPolicy::explicit_threshold(Rational::of(1, 2)));
  REQUIRE(out.is_model());
  CHECK(out.ratio == Rational::integer(1));
}

TEST_CASE("graded law verified across random small instances that stabilize") {
  SplitMix64 rng(0xF21);
  int built = 0;
  for (const char* token : {"z11", "gf16", "gf25"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    for (int rep = 0; rep < 6; ++rep) {
      RSet a = random_subset(r, 2 + rng.below(4), rng);
      GrowthReport g = growth_report(a);
      GeneralOutcome out;
      try {
        out = homogeneous_structure_general(a, g.k_hom, 6,
                                            ZdPolicy::explicit_threshold(Rational::integer(2)));
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NoStabilization);
        continue;
      }
      if (out.is_model()) {
        ++built;
        const FreimanModel& m = out.model();
        CHECK(m.checks.all());  // includes the exhaustive graded law
        // commutative input rings force a trivial twist
        if (r->commutative()) {
          for (std::uint32_t i = 0; i < m.carrier.size(); ++i) CHECK(m.phi[i] == i);
        }
      }
    }
  }
  CHECK(built > 0);
}

TEST_CASE("late stabilization: additive spans grow before the plateau") {
  // GF(16) = F_2[b]/(b^4+b+1), A = {b, b^2}: spans of A^n have sizes
  // 4, 8, 16, 16, ... so the plateau starts at n0 = 3
  RingHandle gf16 = build_ring(RingSpec::galois(2, 4, {1, 1, 0, 0, 1}));
  RSet a = make_set(gf16, {2, 4});
  GradedGroups gg = compute_graded_groups(a, 6);
  CHECK(gg.at(1).card() == 4);
  CHECK(gg.at(2).card() == 8);
  CHECK(gg.at(3).card() == 16);
  CHECK(gg.stable_size == 16);
  CHECK(gg.n0 == 3);
  // pivot: b + b^2 (index 6), the only nonzero difference, a unit
  FreimanModel m = build_freiman_model(a, gg, 6, 6);
  CHECK(m.n0 == 3);
  CHECK(m.stable_size == 16);
  CHECK(m.checks.all());
  CHECK(is_finite_field(*m.r0));  // R0 recovers a 16-element field
  for (std::uint32_t i = 0; i < 16; ++i) CHECK(m.phi[i] == i);  // commutative input
}

TEST_CASE("twisted model over F_3: antidiagonal matrices") {
  RingHandle m2 = build_ring(RingSpec::matrix(2, RingSpec::cyclic(3)));
  std::uint32_t j_swap = m2->matrix_of({0, 1, 1, 0});
  RSet a(m2);
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y) a.insert(m2->matrix_of({0, x, y, 0}));
  CHECK(a.card() == 9);
  GradedGroups gg = compute_graded_groups(a, 6);
  CHECK(gg.stable_size == 9);
  FreimanModel m = build_freiman_model(a, gg, j_swap, 6);
  CHECK(m.checks.all());
  CHECK(m.r0->commutative());  // R0 is the diagonal subring F_3 x F_3
  bool nontrivial = false;
  for (std::uint32_t i = 0; i < 9; ++i) {
    CHECK(m.phi[m.phi[i]] == i);  // conjugation by the swap has order 2
    if (m.phi[i] != i) nontrivial = true;
  }
  CHECK(nontrivial);
}

TEST_CASE("model tables are bit-stable: frozen digests for the GF(9) fixture") {
  RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  RSet a = make_set(gf9, {3, 6});
  GradedGroups gg = compute_graded_groups(a, 6);
  FreimanModel m = build_freiman_model(a, gg, 3, 6);
  std::vector<std::uint32_t> add_flat, mul_flat;
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j) {
      add_flat.push_back(m.r0->add(i, j));
      mul_flat.push_back(m.r0->mul(i, j));
    }
  CHECK(fnv1a64_hex(add_flat.data(), add_flat.size() * 4) == "e940d595c512b566");
  CHECK(fnv1a64_hex(mul_flat.data(), mul_flat.size() * 4) == "b211802c7f8d2e75");
  // iota_2(g) = 2*g*alpha: ranks of {0, 2a, a} for g = 0, 1, 2
  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  CHECK(m.iota[1] == std::vector<Pair>{{0, 0}, {1, 2}, {2, 1}});
}
