#include "sumprod/util.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sumprod {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::MalformedTable: return "MalformedTable";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ZeroProductPower: return "ZeroProductPower";
    case Errc::EmptySet: return "EmptySet";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NotNonZeroDivisors: return "NotNonZeroDivisors";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoStabilization: return "NoStabilization";
    case Errc::NotNonZeroDivisor: return "NotNonZeroDivisor";
    case Errc::BijectivityFailure: return "BijectivityFailure";
    case Errc::SolveFailure: return "SolveFailure";
    case Errc::NotCyclicPrimePower: return "NotCyclicPrimePower";
    case Errc::NotM2: return "NotM2";
    case Errc::TooLarge: return "TooLarge";
    case Errc::PowerTooLarge: return "PowerTooLarge";
    case Errc::ConfigParse: return "ConfigParse";
    case Errc::EmptySweep: return "EmptySweep";
    case Errc::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "UnknownError";
}

Rational Rational::of(std::int64_t n, std::int64_t d) {
  require(d != 0, Errc::ConfigParse, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{n, d};
}

Rational Rational::parse(const std::string& text) {
  require(!text.empty(), Errc::ConfigParse, "empty rational");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t n = std::stoll(text.substr(0, slash));
      std::int64_t d = std::stoll(text.substr(slash + 1));
      return of(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string frac = text.substr(dot + 1);
      require(frac.size() <= 9, Errc::ConfigParse, "decimal too long: " + text);
      std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
      bool neg = !text.empty() && text[0] == '-';
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      std::int64_t num = frac.empty() ? 0 : std::stoll(frac);
      require(num >= 0, Errc::ConfigParse, "bad rational: " + text);
      std::int64_t mag = (whole < 0 ? -whole : whole) * den + num;
      return of(neg ? -mag : mag, den);
    }
    return integer(std::stoll(text));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::ConfigParse, "bad rational: " + text);
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool rat_le(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

bool rat_lt(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational rat_max(const Rational& a, const Rational& b) { return rat_le(a, b) ? b : a; }

bool le_times(std::uint64_t lhs, const Rational& k, std::uint64_t scale) {
  // lhs <= num/den * scale  <=>  lhs*den <= num*scale
  return static_cast<unsigned __int128>(lhs) * static_cast<std::uint64_t>(k.den) <=
         static_cast<unsigned __int128>(static_cast<std::uint64_t>(k.num)) * scale;
}

bool ge_times(std::uint64_t lhs, const Rational& k, std::uint64_t scale) {
  return static_cast<unsigned __int128>(lhs) * static_cast<std::uint64_t>(k.den) >=
         static_cast<unsigned __int128>(static_cast<std::uint64_t>(k.num)) * scale;
}

BigUint& BigUint::mul(std::uint64_t m) {
  if (m == 0) {
    limb_.clear();
    return *this;
  }
  unsigned __int128 carry = 0;
  for (auto& l : limb_) {
    unsigned __int128 cur = static_cast<unsigned __int128>(l) * m + carry;
    l = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry) limb_.push_back(static_cast<std::uint64_t>(carry));
  return *this;
}

BigUint& BigUint::mul_pow(std::uint64_t base, unsigned exp) {
  for (unsigned i = 0; i < exp; ++i) mul(base);
  return *this;
}

BigUint& BigUint::div(std::uint64_t d) {
  unsigned __int128 rem = 0;
  for (std::size_t i = limb_.size(); i-- > 0;) {
    unsigned __int128 cur = (rem << 64) | limb_[i];
    limb_[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  while (!limb_.empty() && limb_.back() == 0) limb_.pop_back();
  return *this;
}

std::strong_ordering BigUint::cmp(const BigUint& o) const {
  if (limb_.size() != o.limb_.size()) return limb_.size() <=> o.limb_.size();
  for (std::size_t i = limb_.size(); i-- > 0;) {
    if (limb_[i] != o.limb_[i]) return limb_[i] <=> o.limb_[i];
  }
  return std::strong_ordering::equal;
}

std::uint64_t BigUint::to_u64_clamped() const {
  if (limb_.empty()) return 0;
  if (limb_.size() > 1) return UINT64_MAX;
  return limb_[0];
}

bool pow_scaled_le(std::uint64_t a, std::uint64_t abase, unsigned e, std::uint64_t b,
                   std::uint64_t bbase) {
  BigUint lhs(a), rhs(b);
  lhs.mul_pow(abase, e);
  rhs.mul_pow(bbase, e);
  return lhs.cmp(rhs) <= 0;
}

std::uint64_t floor_pow_scaled(const Rational& k, unsigned e, std::uint64_t mult,
                               std::uint64_t clamp) {
  BigUint v(mult);
  v.mul_pow(static_cast<std::uint64_t>(k.num), e);
  for (unsigned i = 0; i < e; ++i) v.div(static_cast<std::uint64_t>(k.den));
  std::uint64_t r = v.to_u64_clamped();
  return r < clamp ? r : clamp;
}

bool lt_inv_pow(std::uint64_t count, std::uint64_t card, const Rational& k, unsigned c0) {
  // count < card / k^c0  <=>  count * num^c0 < card * den^c0
  BigUint lhs(count), rhs(card);
  lhs.mul_pow(static_cast<std::uint64_t>(k.num), c0);
  rhs.mul_pow(static_cast<std::uint64_t>(k.den), c0);
  return lhs.cmp(rhs) < 0;
}

bool zd_rich(std::uint64_t count, std::uint64_t card, const std::optional<Rational>& explicit_t,
             const Rational& k) {
  if (explicit_t) return ge_times(count, *explicit_t, card);
  // count >= card / (2 k^4)  <=>  count * 2 * num^4 >= card * den^4
  BigUint lhs(count), rhs(card);
  lhs.mul(2).mul_pow(static_cast<std::uint64_t>(k.num), 4);
  rhs.mul_pow(static_cast<std::uint64_t>(k.den), 4);
  return lhs.cmp(rhs) >= 0;
}

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(const void* data, std::size_t len) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data, len);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace sumprod
