#pragma once

#include <optional>
#include <variant>

#include "sumprod/rset.hpp"

namespace sumprod {

struct ZeroDivisorRich {
  std::uint64_t count = 0;  // |(A-A) \ R^*|
  Rational ratio;           // count / |A|
};

struct GoodSubset {
  RSet a_prime;
  std::uint32_t b0 = 0;
  Rational measured_ratio;  // |A'A' - A'A'| / |A'|
  std::uint64_t pair_count_sum = 0;  // sum over (a,b) of |aA ∩ Ab|
};

struct ExtractionOutcome {
  std::variant<ZeroDivisorRich, GoodSubset> variant;
  bool is_zd_rich() const { return std::holds_alternative<ZeroDivisorRich>(variant); }
  const ZeroDivisorRich& zd() const { return std::get<ZeroDivisorRich>(variant); }
  const GoodSubset& good() const { return std::get<GoodSubset>(variant); }
};

/// Katz-Tao step: from A (all non-zero-divisors) with |A+A|,|A*A| <= K|A|,
/// either certify that A-A is zero-divisor-rich or extract A' of size at
/// least |A|/2K picked through the best pivot b0.
/// zd policy: richness cutoff as a fraction of |A|; default 1/(2K^4).
ExtractionOutcome katz_tao_extract(const RSet& a, const Rational& k,
                                   const ZdPolicy& zd = ZdPolicy{});

// Re-verifies every outcome invariant from scratch.
bool validate_extraction(const RSet& a, const Rational& k, const ZdPolicy& zd,
                         const ExtractionOutcome& out);

// sum over (a,b) in A x A of |a*A ∩ A*b|; the Cauchy-Schwarz lower bound
// sum >= |A|^4 / |A*A| holds whenever A consists of non-zero-divisors.
std::uint64_t pair_count_sum(const RSet& a);

}  // namespace sumprod
