#include "sumprod/extraction.hpp"

namespace sumprod {

namespace {

// |x| >= |A| / (2K): x * 2 * num >= |A| * den
bool meets_half_k(std::uint64_t x, std::uint64_t card_a, const Rational& k) {
  return static_cast<unsigned __int128>(x) * 2 * static_cast<std::uint64_t>(k.num) >=
         static_cast<unsigned __int128>(card_a) * static_cast<std::uint64_t>(k.den);
}

}  // namespace

std::uint64_t pair_count_sum(const RSet& a) {
  std::vector<std::uint32_t> members = a.members();
  std::vector<Bitset> left, right;
  left.reserve(members.size());
  right.reserve(members.size());
  for (std::uint32_t m : members) {
    left.push_back(dilate(m, a, Side::Left).bits());
    right.push_back(dilate(m, a, Side::Right).bits());
  }
  std::uint64_t total = 0;
  for (const Bitset& l : left)
    for (const Bitset& r : right) total += l.and_count(r);
  return total;
}

ExtractionOutcome katz_tao_extract(const RSet& a, const Rational& k, const ZdPolicy& zd) {
  require(!a.empty(), Errc::EmptySet, "extraction from empty set");
  const RingHandle& ring = a.ring();
  require(a.bits().is_subset_of(ring->non_zero_divisors()), Errc::NotNonZeroDivisors,
          "A must consist of non-zero-divisors");
  std::uint64_t card = a.card();
  require(le_times(sumset(a, a).card(), k, card), Errc::HypothesisViolated,
          "|A+A| > K|A|");
  require(le_times(product_set(a, a).card(), k, card), Errc::HypothesisViolated,
          "|A*A| > K|A|");

  RSet diff = difference_set(a, a);
  std::uint64_t zd_count = diff.bits().and_not_count(ring->non_zero_divisors());
  if (zd.rich(zd_count, card, k)) {
    ExtractionOutcome out;
    out.variant = ZeroDivisorRich{zd_count, Rational::ratio(zd_count, card)};
    return out;
  }

  // Pivot selection per the pair-counting argument: for each b, count the
  // elements a with |a*A ∩ A*b| >= |A|/2K; keep the best b (smallest index
  // on ties).
  std::vector<std::uint32_t> members = a.members();
  std::vector<Bitset> left, right;
  left.reserve(members.size());
  right.reserve(members.size());
  for (std::uint32_t m : members) {
    left.push_back(dilate(m, a, Side::Left).bits());
    right.push_back(dilate(m, a, Side::Right).bits());
  }
  std::size_t best_b = 0;
  std::uint64_t best_count = 0;
  for (std::size_t bi = 0; bi < members.size(); ++bi) {
    std::uint64_t count = 0;
    for (std::size_t ai = 0; ai < members.size(); ++ai)
      if (meets_half_k(left[ai].and_count(right[bi]), card, k)) ++count;
    if (count > best_count) {
      best_count = count;
      best_b = bi;
    }
  }

  GoodSubset good;
  good.b0 = members[best_b];
  good.a_prime = RSet(ring);
  for (std::size_t ai = 0; ai < members.size(); ++ai)
    if (meets_half_k(left[ai].and_count(right[best_b]), card, k))
      good.a_prime.insert(members[ai]);
  require(meets_half_k(good.a_prime.card(), card, k), Errc::InternalCheckFailed,
          "good subset smaller than |A|/2K");
  RSet pp = product_set(good.a_prime, good.a_prime);
  good.measured_ratio = Rational::ratio(difference_set(pp, pp).card(), good.a_prime.card());
  good.pair_count_sum = 0;
  for (const Bitset& l : left)
    for (const Bitset& r : right) good.pair_count_sum += l.and_count(r);

  ExtractionOutcome out;
  out.variant = std::move(good);
  return out;
}

bool validate_extraction(const RSet& a, const Rational& k, const ZdPolicy& zd,
                         const ExtractionOutcome& out) {
  if (a.empty()) return false;
  const RingHandle& ring = a.ring();
  std::uint64_t card = a.card();
  RSet diff = difference_set(a, a);
  std::uint64_t zd_count = diff.bits().and_not_count(ring->non_zero_divisors());
  if (out.is_zd_rich()) {
    const ZeroDivisorRich& z = out.zd();
    return z.count == zd_count && z.ratio == Rational::ratio(zd_count, card) &&
           zd.rich(zd_count, card, k);
  }
  const GoodSubset& g = out.good();
  if (!g.a_prime.is_subset_of(a) || g.a_prime.empty()) return false;
  if (!a.contains(g.b0)) return false;
  if (!meets_half_k(g.a_prime.card(), card, k)) return false;
  RSet pp = product_set(g.a_prime, g.a_prime);
  if (!(g.measured_ratio ==
        Rational::ratio(difference_set(pp, pp).card(), g.a_prime.card())))
    return false;
  // membership rule: a' in A' <=> |a'*A ∩ A*b0| >= |A|/2K
  RSet ab0 = dilate(g.b0, a, Side::Right);
  bool ok = true;
  a.bits().for_each([&](std::uint32_t m) {
    bool qualifies = meets_half_k(dilate(m, a, Side::Left).bits().and_count(ab0.bits()), card, k);
    if (qualifies != g.a_prime.contains(m)) ok = false;
  });
  return ok;
}

}  // namespace sumprod
