#pragma once

#include <variant>

#include "sumprod/extraction.hpp"
#include "sumprod/sr.hpp"

namespace sumprod {

struct SubringCert {
  RSet s;
  Rational ratio;  // |S| / |A|
};

struct DilatedSubringCert {
  RSet s;
  std::uint32_t a = 0;
  bool normalizes = false;  // a*S == S*a verified
  Rational ratio;
};

struct SaturatedCert {
  std::uint64_t tau = 0;  // tau >= N, structure claims are vacuous
};

struct StructureCertificate {
  std::variant<ZeroDivisorRich, SubringCert, DilatedSubringCert, SaturatedCert> variant;
  std::uint64_t tau_used = 0;
  bool tau_escalated = false;           // pinned tau failed, ladder search used
  std::vector<std::string> findings;    // pinned-tau failures and notes

  const char* variant_name() const;
  bool is_zd_rich() const { return std::holds_alternative<ZeroDivisorRich>(variant); }
  bool is_subring() const { return std::holds_alternative<SubringCert>(variant); }
  bool is_dilated() const { return std::holds_alternative<DilatedSubringCert>(variant); }
  bool is_saturated() const { return std::holds_alternative<SaturatedCert>(variant); }
};

/// Smallest subset containing G ∪ {0} closed under +, -, *; fixpoint
/// iteration. Empty G yields {0}.
RSet subring_closure(const RSet& g);

/// Inhomogeneous pipeline: zero-divisor branch, else S := S_unit must be a
/// subring containing A. At a pinned tau that fails, a bounded doubling
/// ladder over tau finds the minimal certificate (or Saturated).
StructureCertificate inhomogeneous_structure(const RSet& a, const Rational& k,
                                             const SrConfig& cfg,
                                             const ZdPolicy& zd = ZdPolicy{});

/// Homogeneous pipeline with an invertible a in A: certificate is A ⊆ a*S
/// with a normalizing S (a*S = S*a).
StructureCertificate homogeneous_structure_invertible(
    const RSet& a, const Rational& k, std::uint32_t a_elt, const SrConfig& cfg,
    const ZdPolicy& zd = ZdPolicy{});

/// Re-derives every certificate invariant from scratch.
bool validate_certificate(const RSet& a, const StructureCertificate& cert);

}  // namespace sumprod
