#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumprod/bitset.hpp"
#include "sumprod/kernels.hpp"
#include "sumprod/util.hpp"

using namespace sumprod;

namespace {

std::vector<std::uint64_t> random_words(SplitMix64& rng, std::size_t n) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) x = rng.next();
  return w;
}

}  // namespace

TEST_CASE("simd variants match the scalar reference on random buffers") {
  const auto& scalar = kernels::scalar_ops();
  SplitMix64 rng(0x12345);
  for (const kernels::Ops* ops : kernels::available_ops()) {
    CAPTURE(ops->name);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 16u, 33u, 64u, 129u}) {
      auto a = random_words(rng, n);
      auto b = random_words(rng, n);
      CHECK(ops->popcount(a.data(), n) == scalar.popcount(a.data(), n));
      CHECK(ops->and_popcount(a.data(), b.data(), n) ==
            scalar.and_popcount(a.data(), b.data(), n));
      CHECK(ops->andnot_popcount(a.data(), b.data(), n) ==
            scalar.andnot_popcount(a.data(), b.data(), n));
      CHECK(ops->equals(a.data(), b.data(), n) == scalar.equals(a.data(), b.data(), n));
      CHECK(ops->equals(a.data(), a.data(), n));
      CHECK(ops->is_subset(a.data(), b.data(), n) == scalar.is_subset(a.data(), b.data(), n));
      CHECK(ops->intersects(a.data(), b.data(), n) ==
            scalar.intersects(a.data(), b.data(), n));

      auto d1 = a, d2 = a;
      ops->or_inplace(d1.data(), b.data(), n);
      scalar.or_inplace(d2.data(), b.data(), n);
      CHECK(d1 == d2);
      d1 = a, d2 = a;
      ops->and_inplace(d1.data(), b.data(), n);
      scalar.and_inplace(d2.data(), b.data(), n);
      CHECK(d1 == d2);
      d1 = a, d2 = a;
      ops->andnot_inplace(d1.data(), b.data(), n);
      scalar.andnot_inplace(d2.data(), b.data(), n);
      CHECK(d1 == d2);
    }
  }
}

TEST_CASE("simd variants agree on subset/equal edge patterns") {
  const auto& scalar = kernels::scalar_ops();
  for (const kernels::Ops* ops : kernels::available_ops()) {
    CAPTURE(ops->name);
    for (std::size_t n : {1u, 4u, 5u, 9u}) {
      std::vector<std::uint64_t> zero(n, 0), ones(n, ~0ull), half(n, 0xAAAAAAAAAAAAAAAAull);
      CHECK(ops->is_subset(zero.data(), ones.data(), n));
      CHECK(ops->is_subset(half.data(), ones.data(), n));
      CHECK(!ops->is_subset(ones.data(), half.data(), n));
      CHECK(!ops->intersects(zero.data(), ones.data(), n));
      CHECK(ops->popcount(ones.data(), n) == 64 * n);
      CHECK(ops->popcount(half.data(), n) == 32 * n);
      CHECK(ops->equals(zero.data(), zero.data(), n) ==
            scalar.equals(zero.data(), zero.data(), n));
    }
  }
}

TEST_CASE("bitset basics") {
  Bitset b(130);
  CHECK(b.none());
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.test(64));
  CHECK(!b.test(63));
  CHECK(b.first_set() == 0);
  b.reset(0);
  CHECK(b.first_set() == 64);
  std::vector<std::uint32_t> seen;
  b.for_each([&](std::uint32_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::uint32_t>{64, 129});

  Bitset c(130);
  c.set(64);
  CHECK(c.is_subset_of(b));
  CHECK(c.intersects(b));
  CHECK(b.and_count(c) == 1);
  CHECK(b.and_not_count(c) == 1);
  b.and_not(c);
  CHECK(!b.test(64));
}

TEST_CASE("rational arithmetic and threshold helpers") {
  CHECK(Rational::of(6, 4) == Rational::of(3, 2));
  CHECK(Rational::parse("3/2") == Rational::of(3, 2));
  CHECK(Rational::parse("1.5") == Rational::of(3, 2));
  CHECK(Rational::parse("7") == Rational::integer(7));
  CHECK(Rational::of(3, 2).str() == "3/2");
  CHECK(rat_le(Rational::of(3, 2), Rational::of(5, 3)));
  CHECK(!rat_le(Rational::of(5, 3), Rational::of(3, 2)));
  CHECK(le_times(3, Rational::of(3, 2), 2));
  CHECK(!le_times(4, Rational::of(3, 2), 2));
  CHECK(ge_times(3, Rational::of(3, 2), 2));

  // floor(K^e * mult) against direct computation
  CHECK(floor_pow_scaled(Rational::of(3, 2), 4, 2, 1000) == 10);  // 81/16*2 = 10.125
  CHECK(floor_pow_scaled(Rational::integer(1), 4, 3, 1000) == 3);
  CHECK(floor_pow_scaled(Rational::of(5, 3), 4, 3, 1000) == 23);  // 625/81*3 ~ 23.1
  CHECK(floor_pow_scaled(Rational::integer(10), 8, 100, 500) == 500);  // clamped

  // a * ab^e <= b * bb^e with values that overflow 64-bit words
  CHECK(pow_scaled_le(1, 65536, 8, 1000000, 65536));
  CHECK(!pow_scaled_le(2, 65536, 8, 1, 65535));

  CHECK(lt_inv_pow(0, 3, Rational::integer(1), 4));   // 0 < 3
  CHECK(!lt_inv_pow(3, 3, Rational::integer(1), 4));  // 3 < 3 false
  CHECK(lt_inv_pow(1, 100, Rational::of(3, 2), 4));   // 1 < 100*16/81

  // default zd threshold 1/(2K^4)
  ZdPolicy def;
  CHECK(def.rich(1, 2, Rational::of(3, 2)));   // 1 >= 2/(2*(3/2)^4) = 0.198
  CHECK(!def.rich(0, 2, Rational::of(3, 2)));
  CHECK(!ZdPolicy::never().rich(100, 1, Rational::integer(1)));
  CHECK(ZdPolicy::explicit_threshold(Rational::of(1, 2)).rich(3, 6, Rational::integer(1)));
  CHECK(!ZdPolicy::explicit_threshold(Rational::integer(1)).rich(3, 6, Rational::integer(1)));
}

TEST_CASE("biguint multiply divide compare") {
  BigUint a(65535);
  a.mul_pow(65535, 3);  // 65535^4
  BigUint b(1);
  b.mul_pow(65535, 4);
  CHECK(a.cmp(b) == std::strong_ordering::equal);
  a.mul(2);
  CHECK(a.cmp(b) == std::strong_ordering::greater);
  a.div(2);
  CHECK(a.cmp(b) == std::strong_ordering::equal);
  BigUint c(123456789);
  c.mul(987654321).div(987654321);
  CHECK(c.to_u64_clamped() == 123456789);
}
