#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumprod {

enum class Errc {
  // ring construction
  NonPrimeModulus,
  ReducibleModulus,
  SizeLimitExceeded,
  MalformedTable,
  InvalidSpec,
  // set arithmetic
  IndexOutOfRange,
  RingMismatch,
  ZeroProductPower,
  EmptySet,
  // pipelines
  HypothesisViolated,
  NotNonZeroDivisors,
  NotInvertible,
  NoIdentity,
  NoStabilization,
  NotNonZeroDivisor,
  BijectivityFailure,
  SolveFailure,
  NotCyclicPrimePower,
  NotM2,
  TooLarge,
  PowerTooLarge,
  // harness
  ConfigParse,
  EmptySweep,
  InternalCheckFailed,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

/// Exact nonnegative rational, gcd-reduced, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d);
  static Rational integer(std::int64_t n) { return Rational{n, 1}; }
  static Rational ratio(std::uint64_t a, std::uint64_t b) {
    return of(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
  }
  // Accepts "3", "3/2" and short decimals like "1.5".
  static Rational parse(const std::string& text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

bool rat_le(const Rational& a, const Rational& b);
bool rat_lt(const Rational& a, const Rational& b);
Rational rat_max(const Rational& a, const Rational& b);

// lhs <= k * scale, exact.
bool le_times(std::uint64_t lhs, const Rational& k, std::uint64_t scale);
// lhs >= k * scale, exact.
bool ge_times(std::uint64_t lhs, const Rational& k, std::uint64_t scale);

/// Little-endian base-2^64 unsigned integer. Just enough arithmetic for the
/// exact threshold comparisons (K^e * count) that overflow native words.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v) {
    if (v) limb_.push_back(v);
  }
  BigUint& mul(std::uint64_t m);
  BigUint& mul_pow(std::uint64_t base, unsigned exp);
  // Floor-divide in place, d > 0.
  BigUint& div(std::uint64_t d);
  std::strong_ordering cmp(const BigUint& o) const;
  std::uint64_t to_u64_clamped() const;

 private:
  std::vector<std::uint64_t> limb_;  // empty means zero
};

// a * abase^e  <=  b * bbase^e, exact.
bool pow_scaled_le(std::uint64_t a, std::uint64_t abase, unsigned e, std::uint64_t b,
                   std::uint64_t bbase);

// min(clamp, floor(k^e * mult))
std::uint64_t floor_pow_scaled(const Rational& k, unsigned e, std::uint64_t mult,
                               std::uint64_t clamp);

// count < card / k^c0, exact.
bool lt_inv_pow(std::uint64_t count, std::uint64_t card, const Rational& k, unsigned c0);

// Zero-divisor richness test: count >= t * card where t is the explicit
// threshold when given and 1/(2 K^4) otherwise.
bool zd_rich(std::uint64_t count, std::uint64_t card, const std::optional<Rational>& explicit_t,
             const Rational& k);

/// Decision rule for the zero-divisor-rich branch of a pipeline.
/// Never: the caller has structurally excluded the branch (e.g. a division
/// ring has at most one zero-divisor difference).
struct ZdPolicy {
  enum class Kind { DefaultK4, Explicit, Never };
  Kind kind = Kind::DefaultK4;
  Rational value{0, 1};

  static ZdPolicy explicit_threshold(const Rational& t) {
    return ZdPolicy{Kind::Explicit, t};
  }
  static ZdPolicy never() { return ZdPolicy{Kind::Never, Rational{0, 1}}; }

  bool rich(std::uint64_t count, std::uint64_t card, const Rational& k) const {
    switch (kind) {
      case Kind::DefaultK4: return zd_rich(count, card, std::nullopt, k);
      case Kind::Explicit: return ge_times(count, value, card);
      case Kind::Never: return false;
    }
    return false;
  }
  std::string str() const {
    switch (kind) {
      case Kind::DefaultK4: return "1/(2K^4)";
      case Kind::Explicit: return value.str();
      case Kind::Never: return "never";
    }
    return "";
  }
};

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull);
std::string fnv1a64_hex(const void* data, std::size_t len);

/// Deterministic 64-bit generator (splitmix64). Used instead of
/// std::uniform_int_distribution so streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // value in [0, n), n > 0; modulo reduction (bias irrelevant at our scales)
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }

 private:
  std::uint64_t state_;
};

}  // namespace sumprod
