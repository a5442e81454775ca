#include "sumprod/structure.hpp"

#include <algorithm>

namespace sumprod {

const char* StructureCertificate::variant_name() const {
  if (is_zd_rich()) return "ZeroDivisorRich";
  if (is_subring()) return "Subring";
  if (is_dilated()) return "DilatedSubring";
  return "Saturated";
}

RSet subring_closure(const RSet& g) {
  const FiniteRing& ring = *g.ring();
  RSet s(g.ring());
  s.insert(0);
  std::vector<std::uint32_t> members{0};
  std::vector<std::uint32_t> work{0};
  auto push = [&](std::uint32_t x) {
    if (!s.contains(x)) {
      s.insert(x);
      members.push_back(x);
      work.push_back(x);
    }
  };
  g.bits().for_each([&](std::uint32_t x) { push(x); });
  while (!work.empty()) {
    std::uint32_t x = work.back();
    work.pop_back();
    push(ring.neg(x));
    // snapshot size: elements appended during this sweep pair with x later
    std::size_t upto = members.size();
    for (std::size_t i = 0; i < upto; ++i) {
      std::uint32_t y = members[i];
      push(ring.add(x, y));
      push(ring.sub(x, y));
      push(ring.sub(y, x));
      push(ring.mul(x, y));
      push(ring.mul(y, x));
    }
  }
  return s;
}

namespace {

// tau escalation ladder: |A|, 2|A|, 4|A|, ..., N-1 (deduplicated, < N)
std::vector<std::uint64_t> tau_ladder(std::uint64_t card_a, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = std::max<std::uint64_t>(card_a, 1); t < n; t *= 2) out.push_back(t);
  if (n >= 1 && (out.empty() || out.back() != n - 1)) out.push_back(n - 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<StructureCertificate> zd_branch(const RSet& a, const Rational& k,
                                              const ZdPolicy& zd) {
  RSet diff = difference_set(a, a);
  std::uint64_t count = diff.bits().and_not_count(a.ring()->non_zero_divisors());
  if (!zd.rich(count, a.card(), k)) return std::nullopt;
  StructureCertificate cert;
  cert.variant = ZeroDivisorRich{count, Rational::ratio(count, a.card())};
  return cert;
}

}  // namespace

StructureCertificate inhomogeneous_structure(const RSet& a, const Rational& k,
                                             const SrConfig& cfg, const ZdPolicy& zd) {
  require(!a.empty(), Errc::EmptySet, "inhomogeneous pipeline over empty set");
  GrowthReport g = growth_report(a);
  require(rat_le(g.k_inhom, k), Errc::HypothesisViolated,
          "need |A + A*A| <= K|A| and |A*A| >= |A|/K; minimal K is " + g.k_inhom.str());

  if (auto cert = zd_branch(a, k, zd)) return *cert;

  std::uint64_t n = a.ring()->size();
  StructureCertificate cert;
  auto attempt = [&](const SrConfig& c) -> bool {
    SrSet s = compute_sr(a, k, SrTarget::formal_unit(), c);
    cert.tau_used = s.tau;
    if (s.saturated) {
      cert.variant = SaturatedCert{s.tau};
      return true;
    }
    bool closed = subring_closure(s.members) == s.members;
    bool contains = a.is_subset_of(s.members);
    if (closed && contains) {
      std::uint64_t cs = s.members.card();
      require(g.size_sum_prod <= cs, Errc::InternalCheckFailed,
              "|A + A*A| must not exceed |S| for a subring certificate");
      cert.variant = SubringCert{s.members, Rational::ratio(cs, a.card())};
      return true;
    }
    cert.findings.push_back("tau=" + std::to_string(s.tau) + ": " +
                            (closed ? "" : std::string("S_unit not closed; ")) +
                            (contains ? "" : std::string("A not contained in S_unit")));
    return false;
  };

  if (attempt(cfg)) return cert;
  cert.tau_escalated = true;
  for (std::uint64_t t : tau_ladder(a.card(), n)) {
    if (cfg.threshold_override && t == *cfg.threshold_override) continue;
    SrConfig c = cfg;
    c.threshold_override = t;
    if (attempt(c)) return cert;
  }
  cert.variant = SaturatedCert{n};
  cert.tau_used = n;
  return cert;
}

StructureCertificate homogeneous_structure_invertible(const RSet& a, const Rational& k,
                                                      std::uint32_t a_elt, const SrConfig& cfg,
                                                      const ZdPolicy& zd) {
  require(!a.empty(), Errc::EmptySet, "homogeneous pipeline over empty set");
  const RingHandle& ring = a.ring();
  require(ring->has_identity(), Errc::NoIdentity, "ring has no identity");
  require(a.contains(a_elt), Errc::HypothesisViolated, "a must be an element of A");
  std::optional<std::uint32_t> inv = ring->inverse_of(a_elt);
  require(inv.has_value(), Errc::NotInvertible,
          "a = " + std::to_string(a_elt) + " has no two-sided inverse");
  GrowthReport g = growth_report(a);
  require(rat_le(g.k_hom, k), Errc::HypothesisViolated,
          "need |A*A - A*A| <= K|A| and |A*A| >= |A|/K; minimal K is " + g.k_hom.str());

  if (auto cert = zd_branch(a, k, zd)) return *cert;

  std::uint64_t n = ring->size();
  RSet a_shifted = dilate(*inv, a, Side::Left);  // a^{-1} A; A ⊆ a*S <=> a^{-1}A ⊆ S
  StructureCertificate cert;
  std::optional<StructureCertificate> partial;  // subring+containment but not normalizing

  auto attempt = [&](const SrConfig& c) -> bool {
    SrSet s = compute_sr(a, k, SrTarget::formal_unit(), c);
    cert.tau_used = s.tau;
    if (s.saturated) {
      cert.variant = SaturatedCert{s.tau};
      return true;
    }
    bool closed = subring_closure(s.members) == s.members;
    bool contains = a_shifted.is_subset_of(s.members);
    bool normalizes =
        dilate(a_elt, s.members, Side::Left) == dilate(a_elt, s.members, Side::Right);
    if (closed && contains && normalizes) {
      require(g.size_prod_diff <= s.members.card(), Errc::InternalCheckFailed,
              "|A*A - A*A| must not exceed |S| for a normalizing dilated certificate");
      cert.variant = DilatedSubringCert{s.members, a_elt, true,
                                        Rational::ratio(s.members.card(), a.card())};
      return true;
    }
    if (closed && contains && !partial) {
      partial = cert;
      partial->variant = DilatedSubringCert{s.members, a_elt, false,
                                            Rational::ratio(s.members.card(), a.card())};
      partial->tau_used = s.tau;
    }
    cert.findings.push_back("tau=" + std::to_string(s.tau) + ": " +
                            (closed ? "" : std::string("S_unit not closed; ")) +
                            (contains ? "" : std::string("a^-1 A not contained; ")) +
                            (normalizes ? "" : std::string("a does not normalize S")));
    return false;
  };

  if (attempt(cfg)) return cert;
  cert.tau_escalated = true;
  for (std::uint64_t t : tau_ladder(a.card(), n)) {
    if (cfg.threshold_override && t == *cfg.threshold_override) continue;
    SrConfig c = cfg;
    c.threshold_override = t;
    if (attempt(c)) return cert;
  }
  if (partial) {
    partial->tau_escalated = true;
    partial->findings = cert.findings;
    return *partial;
  }
  cert.variant = SaturatedCert{n};
  cert.tau_used = n;
  return cert;
}

bool validate_certificate(const RSet& a, const StructureCertificate& cert) {
  if (a.empty()) return false;
  const RingHandle& ring = a.ring();
  if (cert.is_zd_rich()) {
    const ZeroDivisorRich& z = std::get<ZeroDivisorRich>(cert.variant);
    RSet diff = difference_set(a, a);
    std::uint64_t count = diff.bits().and_not_count(ring->non_zero_divisors());
    return z.count == count && z.ratio == Rational::ratio(count, a.card());
  }
  if (cert.is_saturated())
    return std::get<SaturatedCert>(cert.variant).tau >= ring->size();
  if (cert.is_subring()) {
    const SubringCert& c = std::get<SubringCert>(cert.variant);
    if (c.s.ring() != ring) return false;
    if (!(subring_closure(c.s) == c.s)) return false;
    if (!a.is_subset_of(c.s)) return false;
    if (!(c.ratio == Rational::ratio(c.s.card(), a.card()))) return false;
    return sumset(a, product_set(a, a)).card() <= c.s.card();
  }
  const DilatedSubringCert& c = std::get<DilatedSubringCert>(cert.variant);
  if (c.s.ring() != ring) return false;
  if (!(subring_closure(c.s) == c.s)) return false;
  if (!a.is_subset_of(dilate(c.a, c.s, Side::Left))) return false;
  if (!(c.ratio == Rational::ratio(c.s.card(), a.card()))) return false;
  if (c.normalizes) {
    if (!(dilate(c.a, c.s, Side::Left) == dilate(c.a, c.s, Side::Right))) return false;
    RSet pp = product_set(a, a);
    if (difference_set(pp, pp).card() > c.s.card()) return false;
  }
  return true;
}

}  // namespace sumprod
