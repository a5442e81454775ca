#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sumprod/catalog.hpp"
#include "sumprod/ring.hpp"

using namespace sumprod;

TEST_CASE("cyclic ring Z/6") {
  RingHandle r = build_ring(RingSpec::cyclic(6));
  CHECK(r->size() == 6);
  CHECK(r->has_identity());
  CHECK(*r->one() == 1);
  CHECK(r->commutative());
  CHECK(r->add(4, 5) == 3);
  CHECK(r->mul(2, 3) == 0);
  CHECK(r->neg(2) == 4);
  CHECK(classify_non_zero_divisors(*r) == std::vector<std::uint32_t>{1, 5});
}

TEST_CASE("GF(9) as F_3[a]/(a^2+1)") {
  RingHandle r = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  CHECK(r->size() == 9);
  CHECK(r->has_identity());
  // alpha has index 3 (coefficients little-endian base 3); alpha^2 = -1 = 2
  CHECK(r->mul(3, 3) == 2);
  CHECK(r->element_name(3) == "a");
  CHECK(r->element_name(5) == "a+2");
  // field: every nonzero element is a unit, found by exhaustive product scan
  for (std::uint32_t x = 1; x < 9; ++x) {
    bool unit = false;
    for (std::uint32_t y = 1; y < 9; ++y)
      if (r->mul(x, y) == 1 && r->mul(y, x) == 1) unit = true;
    CHECK(unit);
  }
  CHECK(classify_non_zero_divisors(*r).size() == 8);
  CHECK(is_finite_field(*r));
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS((void)build_ring(RingSpec::galois(4, 2, {1, 0, 1})), Error);  // 4 not prime
  // x^2 + 2 = (x+1)(x+2) over F_3
  try {
    (void)build_ring(RingSpec::galois(3, 2, {2, 0, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReducibleModulus);
  }
  // canonical modulus is irreducible by construction
  for (auto [p, k] : {std::pair{2u, 6u}, {3u, 2u}, {5u, 2u}, {7u, 2u}}) {
    RingHandle r = build_ring(RingSpec::galois(p, k));
    CHECK(is_finite_field(*r));
  }
}

TEST_CASE("matrix ring M_2(F_2)") {
  RingHandle r = build_ring(RingSpec::matrix(2, RingSpec::cyclic(2)));
  CHECK(r->size() == 16);
  CHECK(r->has_identity());
  CHECK(!r->commutative());
  // exhaustive scan finds a non-commuting pair
  bool found = false;
  for (std::uint32_t a = 0; a < 16 && !found; ++a)
    for (std::uint32_t b = 0; b < 16; ++b)
      if (r->mul(a, b) != r->mul(b, a)) {
        found = true;
        break;
      }
  CHECK(found);
  // units of M_2(F_2) = GL_2(F_2), order 6; units are exactly the non-zero-divisors
  std::uint32_t units = 0;
  for (std::uint32_t a = 0; a < 16; ++a)
    if (r->inverse_of(a)) ++units;
  CHECK(units == 6);
  CHECK(classify_non_zero_divisors(*r).size() == 6);
}

TEST_CASE("product ring F_3 x F_3") {
  RingHandle r = build_ring(RingSpec::product({RingSpec::cyclic(3), RingSpec::cyclic(3)}));
  CHECK(r->size() == 9);
  CHECK(r->commutative());
  CHECK(r->has_identity());
  CHECK(*r->one() == 4);  // (1,1) = 1 + 3*1
  CHECK(r->project(5, 0) == 2);
  CHECK(r->project(5, 1) == 1);
  CHECK(r->embed({2, 1}) == 5);
  // R^* = {(x,y): x,y != 0}, componentwise scan
  auto nz = classify_non_zero_divisors(*r);
  CHECK(nz.size() == 4);
  for (std::uint32_t x : nz) {
    CHECK(r->project(x, 0) != 0);
    CHECK(r->project(x, 1) != 0);
  }
  CHECK(r->element_name(5) == "(2,1)");
}

TEST_CASE("axiom report on catalog rings and corrupted tables") {
  for (const auto& [name, spec] : ring_catalog()) {
    RingHandle r = build_ring(spec);
    AxiomReport rep = check_ring_axioms(*r);
    CAPTURE(name);
    CHECK(rep.all_pass);
    CHECK(rep.exhaustive);
  }
  // commutativity is informational: M_2(F_2) passes the axioms, flag false
  AxiomReport m2 = check_ring_axioms(*build_ring(RingSpec::matrix(2, RingSpec::cyclic(2))));
  CHECK(m2.all_pass);
  CHECK(!m2.mul_commutative);

  // corrupt one mul entry of Z/4: associativity (or distributivity) must fail
  RingHandle z4 = build_ring(RingSpec::cyclic(4));
  std::vector<std::uint32_t> add(16), mul(16);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      add[a * 4 + b] = z4->add(a, b);
      mul[a * 4 + b] = z4->mul(a, b);
    }
  mul[2 * 4 + 3] = 1;  // 2*3 = 2 becomes 1
  RingHandle bad = build_ring(RingSpec::table(4, add, mul));
  AxiomReport rep = check_ring_axioms(*bad);
  CHECK(!rep.all_pass);
  bool witnessed = false;
  for (const auto& res : rep.results)
    if (!res.pass && res.witness) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("units are non-zero-divisors with two-sided inverses") {
  for (const char* token : {"z12", "gf9", "m2_2", "p3x3"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    for (std::uint32_t x = 0; x < r->size(); ++x) {
      auto inv = r->inverse_of(x);
      if (inv) {
        CHECK(!r->is_zero_divisor(x));
        CHECK(r->mul(x, *inv) == *r->one());
        CHECK(r->mul(*inv, x) == *r->one());
      }
    }
  }
}

TEST_CASE("zero-divisor classification matches the product-scan oracle") {
  // oracle: r is a non-zero-divisor iff r*a != 0 and a*r != 0 for all a != 0
  auto brute = [](const FiniteRing& r) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < r.size(); ++x) {
      bool ok = true;
      for (std::uint32_t a = 1; a < r.size() && ok; ++a)
        ok = r.mul(x, a) != 0 && r.mul(a, x) != 0;
      if (ok) out.push_back(x);
    }
    return out;
  };
  for (const auto& [name, spec] : ring_catalog()) {
    RingHandle r = build_ring(spec);
    CAPTURE(name);
    CHECK(classify_non_zero_divisors(*r) == brute(*r));
  }
  for (const char* token : {"z101", "gf64", "m2_5", "p5x7"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    CAPTURE(token);
    CHECK(classify_non_zero_divisors(*r) == brute(*r));
  }
  // table rings route through the scan path; cross-check one against cyclic
  RingHandle z12 = build_ring(RingSpec::cyclic(12));
  std::vector<std::uint32_t> add(144), mul(144);
  for (std::uint32_t a = 0; a < 12; ++a)
    for (std::uint32_t b = 0; b < 12; ++b) {
      add[a * 12 + b] = z12->add(a, b);
      mul[a * 12 + b] = z12->mul(a, b);
    }
  RingHandle tab = build_ring(RingSpec::table(12, add, mul));
  CHECK(classify_non_zero_divisors(*tab) == classify_non_zero_divisors(*z12));
}

TEST_CASE("R* is multiplicatively closed") {
  for (const char* token : {"z12", "z30", "gf16", "m2_2", "m2_3", "p3x3"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    auto nz = classify_non_zero_divisors(*r);
    for (std::uint32_t a : nz)
      for (std::uint32_t b : nz) CHECK(!r->is_zero_divisor(r->mul(a, b)));
  }
}

TEST_CASE("in a finite unital ring every non-zero-divisor is a unit") {
  for (const char* token : {"z12", "z30", "gf16", "m2_2", "m2_3", "p3x3"}) {
    RingHandle r = build_ring(parse_ring_token(token));
    REQUIRE(r->has_identity());
    for (std::uint32_t a : classify_non_zero_divisors(*r)) {
      CAPTURE(token);
      CHECK(r->inverse_of(a).has_value());
    }
  }
}

TEST_CASE("subring view drops the identity") {
  RingHandle z9 = build_ring(RingSpec::cyclic(9));
  Bitset members(9);
  for (std::uint32_t x : {0u, 3u, 6u}) members.set(x);
  RingHandle sub = subring_view(z9, members);
  CHECK(sub->size() == 3);
  CHECK(!sub->has_identity());  // 3*3 = 0 in Z/9, products vanish
  CHECK(sub->mul(1, 1) == 0);
  CHECK(sub->add(1, 2) == 0);  // 3 + 6 = 0
  CHECK(check_ring_axioms(*sub).all_pass);

  // {0,2,4} in Z/6 has identity 4
  RingHandle z6 = build_ring(RingSpec::cyclic(6));
  Bitset ev(6);
  for (std::uint32_t x : {0u, 2u, 4u}) ev.set(x);
  RingHandle sub6 = subring_view(z6, ev);
  CHECK(sub6->has_identity());
  CHECK(*sub6->one() == 2);  // local rank of parent element 4
}

TEST_CASE("memoized arithmetic matches computed arithmetic") {
  for (const char* token : {"z30", "gf27", "m2_3", "p5x5"}) {
    BuildOptions on, off;
    on.memo = BuildOptions::Memo::On;
    off.memo = BuildOptions::Memo::Off;
    RingHandle a = build_ring(parse_ring_token(token), on);
    RingHandle b = build_ring(parse_ring_token(token), off);
    REQUIRE(a->size() == b->size());
    CHECK(a->memoized());
    CHECK(!b->memoized());
    for (std::uint32_t x = 0; x < a->size(); ++x)
      for (std::uint32_t y = 0; y < a->size(); ++y) {
        REQUIRE(a->add(x, y) == b->add(x, y));
        REQUIRE(a->mul(x, y) == b->mul(x, y));
      }
  }
}

TEST_CASE("ring spec text format") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sumprod_ring_spec_test";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "f3.ring") << "kind=cyclic q=3\n";
    std::ofstream(dir / "gf9.ring") << "# GF(9)\nkind=gf p=3 k=2 mod=1,0,1\n";
    std::ofstream(dir / "prod.ring") << "kind=product parts=f3.ring,f3.ring\n";
    std::ofstream(dir / "m2.ring") << "kind=matrix d=2 base=f3.ring\n";
    std::ofstream out(dir / "tab.ring");
    out << "kind=table n=2\n0 1\n1 0\n0 0\n0 1\n";
  }
  CHECK(build_ring(parse_ring_spec_file((dir / "f3.ring").string()))->size() == 3);
  RingHandle gf9 = build_ring(parse_ring_spec_file((dir / "gf9.ring").string()));
  CHECK(gf9->size() == 9);
  CHECK(gf9->mul(3, 3) == 2);
  CHECK(build_ring(parse_ring_spec_file((dir / "prod.ring").string()))->size() == 9);
  CHECK(build_ring(parse_ring_spec_file((dir / "m2.ring").string()))->size() == 81);
  RingHandle tab = build_ring(parse_ring_spec_file((dir / "tab.ring").string()));
  CHECK(tab->size() == 2);
  CHECK(check_ring_axioms(*tab).all_pass);  // F_2
  // inline and token forms
  CHECK(build_ring(parse_ring_arg("kind=cyclic q=11"))->size() == 11);
  CHECK(build_ring(parse_ring_arg("gf64"))->size() == 64);
  CHECK(build_ring(parse_ring_arg("m2_3"))->size() == 81);
  CHECK(build_ring(parse_ring_arg("p5x5"))->size() == 25);
  fs::remove_all(dir);
}

TEST_CASE("table validation errors") {
  std::vector<std::uint32_t> good_add{0, 1, 1, 0}, good_mul{0, 0, 0, 1};
  CHECK_THROWS_AS((void)build_ring(RingSpec::table(2, {0, 1, 1}, good_mul)), Error);
  CHECK_THROWS_AS((void)build_ring(RingSpec::table(2, {0, 1, 1, 7}, good_mul)), Error);
  // index 0 must be the additive identity
  try {
    (void)build_ring(RingSpec::table(2, {1, 0, 0, 1}, good_mul));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedTable);
  }
}

TEST_CASE("sampled axiom mode above the exhaustive limit") {
  AxiomCheckOptions opt;
  opt.exhaustive_limit = 16;  // force sampling
  opt.samples = 20000;
  RingHandle r = build_ring(RingSpec::cyclic(100));
  AxiomReport rep = check_ring_axioms(*r, opt);
  CHECK(rep.all_pass);
  CHECK(!rep.exhaustive);
}

TEST_CASE("prime characteristic detection") {
  CHECK(build_ring(RingSpec::galois(3, 2))->prime_characteristic() == 3u);
  CHECK(build_ring(RingSpec::matrix(2, RingSpec::cyclic(2)))->prime_characteristic() == 2u);
  CHECK(build_ring(RingSpec::cyclic(9))->prime_characteristic() == std::nullopt);  // 9 = 3^2 but exponent 9
  CHECK(build_ring(RingSpec::cyclic(12))->prime_characteristic() == std::nullopt);
  CHECK(build_ring(RingSpec::product({RingSpec::cyclic(5), RingSpec::cyclic(5)}))
            ->prime_characteristic() == 5u);
}

TEST_CASE("non-monic modulus is normalized") {
  // 2x^2 + 2 = 2(x^2 + 1) over F_3: same quotient ring as x^2 + 1
  RingHandle a = build_ring(RingSpec::galois(3, 2, {2, 0, 2}));
  RingHandle b = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
  REQUIRE(a->size() == b->size());
  for (std::uint32_t x = 0; x < 9; ++x)
    for (std::uint32_t y = 0; y < 9; ++y) CHECK(a->mul(x, y) == b->mul(x, y));
}
