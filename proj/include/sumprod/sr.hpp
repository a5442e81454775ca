#pragma once

#include <map>
#include <optional>

#include "sumprod/rset.hpp"

namespace sumprod {

struct SrConfig {
  unsigned c0 = 4;  // threshold exponent: tau = K^c0 |A|
  std::optional<std::uint64_t> threshold_override;
};

/// r-parameter of an S_r computation: a ring element, or the formal unit
/// symbol (reads r*A as A itself; coincides with S_1 in unital rings).
struct SrTarget {
  bool formal = false;
  std::uint32_t index = 0;

  static SrTarget element(std::uint32_t i) { return SrTarget{false, i}; }
  static SrTarget formal_unit() { return SrTarget{true, 0}; }
  std::string str() const { return formal ? "unit" : std::to_string(index); }
  friend bool operator==(const SrTarget& a, const SrTarget& b) {
    return a.formal == b.formal && (a.formal || a.index == b.index);
  }
};

struct SrSet {
  SrTarget r;
  std::uint64_t tau = 0;  // effective threshold (clamped to N)
  bool saturated = false; // raw threshold >= N, so S_r = R trivially
  RSet members;           // exactly { x : |x*A + r*A| <= tau }
};

// Effective threshold for (A, K, cfg), clamped to N; the bool is the
// saturation flag (raw value >= N).
std::pair<std::uint64_t, bool> sr_threshold(const RSet& a, const Rational& k,
                                            const SrConfig& cfg);

SrSet compute_sr(const RSet& a, const Rational& k, SrTarget r, const SrConfig& cfg);

// |x*A + r*A| for every x in R (exact, no early abort).
std::vector<std::uint64_t> sr_values(const RSet& a, SrTarget r);

// --- property verification ------------------------------------------------

struct SrPropertyCheck {
  std::string name;
  bool applicable = false;  // proposition hypotheses met and not saturated
  bool passed = false;
  std::vector<std::vector<std::uint32_t>> witnesses;  // property-specific tuples
  std::optional<double> measured_exponent;            // properties i, ii
  std::optional<std::uint64_t> min_passing_tau;       // for failed exact checks
};

struct SrPropertyReport {
  Rational k;
  unsigned c0 = 0;
  std::uint64_t tau = 0;
  bool saturated = false;
  bool hypotheses_ok = false;
  std::uint64_t h_prod_diff = 0;  // |A*A - A*A|
  std::uint64_t h_prod = 0;       // |A*A|
  std::uint64_t h_zd_diff = 0;    // |(A-A) \ R^*|
  std::vector<SrPropertyCheck> checks;

  const SrPropertyCheck& by_name(const std::string& name) const;
};

/// Verifies the nine structural properties of the S_r family over the given
/// scope (restricted to R^* where the property demands it, with the formal
/// unit included where relevant). Exact properties are pass/fail at the
/// pinned tau; failures carry witnesses and the minimal passing tau.
SrPropertyReport verify_sr_properties(const RSet& a, const Rational& k, const SrConfig& cfg,
                                      const std::vector<std::uint32_t>& scope);

// Replays every failure witness in the report; true when all reproduce.
bool validate_sr_report(const RSet& a, const Rational& k, const SrConfig& cfg,
                        const SrPropertyReport& report);

}  // namespace sumprod
