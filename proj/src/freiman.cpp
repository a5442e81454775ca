#include "sumprod/freiman.hpp"

#include <algorithm>

namespace sumprod {

namespace {

// additive closure: smallest subgroup of (R,+) containing g
RSet additive_closure(const RSet& g) {
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
    std::size_t upto = members.size();
    for (std::size_t i = 0; i < upto; ++i) {
      push(ring.add(x, members[i]));
      push(ring.sub(x, members[i]));
    }
  }
  return s;
}

// map y -> w over the carrier where y = f(w); -1 where no preimage
std::vector<std::int32_t> invert_over_carrier(const FiniteRing& ring,
                                              const std::vector<std::uint32_t>& carrier,
                                              auto&& f) {
  std::vector<std::int32_t> inv(ring.size(), -1);
  for (std::uint32_t w : carrier) {
    std::uint32_t y = f(w);
    require(inv[y] < 0, Errc::SolveFailure, "carrier map is not injective");
    inv[y] = static_cast<std::int32_t>(w);
  }
  return inv;
}

}  // namespace

GradedGroups compute_graded_groups(const RSet& a, std::uint32_t n_max) {
  require(!a.empty(), Errc::EmptySet, "graded groups of empty set");
  require(n_max >= 2, Errc::ConfigParse, "n_max must be >= 2");
  GradedGroups gg;
  RSet power = a;
  gg.groups.push_back(additive_closure(power));
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    power = product_set(power, a);
    gg.groups.push_back(additive_closure(power));
  }
  std::uint64_t last = gg.groups.back().card();
  require(gg.groups[gg.groups.size() - 2].card() == last, Errc::NoStabilization,
          "|G_n| still changing at n_max = " + std::to_string(n_max));
  std::uint32_t n0 = n_max;
  while (n0 > 1 && gg.groups[n0 - 2].card() == last) --n0;
  gg.stable_size = last;
  gg.n0 = n0;
  return gg;
}

FreimanModel build_freiman_model(const RSet& a, const GradedGroups& gg, std::uint32_t a_elt,
                                 std::uint32_t n_max) {
  const FiniteRing& ring = *a.ring();
  require(n_max >= 2 && n_max <= gg.n_max(), Errc::ConfigParse,
          "n_max out of range of the computed graded groups");
  RSet diff = difference_set(a, a);
  require(diff.contains(a_elt) && !ring.is_zero_divisor(a_elt), Errc::NotNonZeroDivisor,
          "a must lie in (A-A) ∩ R^*");

  std::uint32_t n0 = gg.n0;
  std::uint64_t big_n = gg.stable_size;

  // a in (A-A) ∩ R^* makes x -> a x injective with a G_n ⊆ G_{n+1}, so the
  // group sizes cannot decrease.
  for (std::uint32_t n = 1; n < gg.n_max(); ++n)
    require(gg.at(n).card() <= gg.at(n + 1).card(), Errc::InternalCheckFailed,
            "|G_n| decreased despite a pivot in (A-A) ∩ R^*");

  // Left- and right-multiplication by a must be bijections G_n -> G_{n+1} on
  // the plateau; injectivity comes from a in R^*, so verify image and size.
  for (std::uint32_t n = n0; n < gg.n_max(); ++n) {
    RSet lhs = dilate(a_elt, gg.at(n), Side::Left);
    RSet rhs = dilate(a_elt, gg.at(n), Side::Right);
    require(lhs.is_subset_of(gg.at(n + 1)) && lhs.card() == gg.at(n + 1).card(),
            Errc::BijectivityFailure,
            "x -> a x is not a bijection G_" + std::to_string(n) + " -> G_" +
                std::to_string(n + 1));
    require(rhs.is_subset_of(gg.at(n + 1)) && rhs.card() == gg.at(n + 1).card(),
            Errc::BijectivityFailure,
            "x -> x a is not a bijection G_" + std::to_string(n) + " -> G_" +
                std::to_string(n + 1));
  }

  FreimanModel m;
  m.a_elt = a_elt;
  m.n0 = n0;
  m.stable_size = big_n;
  m.carrier = gg.at(n0).members();
  std::uint32_t nc = static_cast<std::uint32_t>(m.carrier.size());
  std::vector<std::int32_t> rank(ring.size(), -1);
  for (std::uint32_t i = 0; i < nc; ++i) rank[m.carrier[i]] = static_cast<std::int32_t>(i);

  std::vector<std::uint32_t> apow(n_max + n0 + 1);
  apow[1] = a_elt;
  for (std::uint32_t i = 2; i <= n_max + n0; ++i) apow[i] = ring.mul(apow[i - 1], a_elt);

  std::uint32_t e_parent = apow[n0];
  require(rank[e_parent] >= 0, Errc::InternalCheckFailed, "a^{n0} is not in the carrier");
  m.identity_rank = static_cast<std::uint32_t>(rank[e_parent]);

  // solve tables through the stabilized bijections
  // rsolve[n]: value w * a^n  ->  w (for w in carrier)
  std::vector<std::vector<std::int32_t>> rsolve(n_max + 1);
  for (std::uint32_t n = 1; n <= n_max; ++n)
    rsolve[n] = invert_over_carrier(ring, m.carrier,
                                    [&](std::uint32_t w) { return ring.mul(w, apow[n]); });
  // lsolve: value a^{n0} * w  ->  w
  std::vector<std::int32_t> lsolve = invert_over_carrier(
      ring, m.carrier, [&](std::uint32_t w) { return ring.mul(apow[n0], w); });

  auto rsolve_at = [&](std::uint32_t n, std::uint32_t y) -> std::uint32_t {
    std::int32_t w = rsolve[n][y];
    require(w >= 0, Errc::SolveFailure, "right solve missed the carrier");
    return static_cast<std::uint32_t>(w);
  };
  auto lsolve_at = [&](std::uint32_t y) -> std::uint32_t {
    std::int32_t w = lsolve[y];
    require(w >= 0, Errc::SolveFailure, "left solve missed the carrier");
    return static_cast<std::uint32_t>(w);
  };

  // R0 product: x*y is the unique z with z a^{n0} = x w, where a^{n0} w = y a^{n0};
  // this transports composition of degree-0 dilations through the carrier.
  std::vector<std::uint32_t> add_tab(static_cast<std::size_t>(nc) * nc);
  std::vector<std::uint32_t> mul_tab(add_tab.size());
  for (std::uint32_t i = 0; i < nc; ++i) {
    std::uint32_t xp = m.carrier[i];
    for (std::uint32_t j = 0; j < nc; ++j) {
      std::uint32_t yp = m.carrier[j];
      std::uint32_t sum = ring.add(xp, yp);
      require(rank[sum] >= 0, Errc::InternalCheckFailed, "carrier not closed under +");
      add_tab[static_cast<std::size_t>(i) * nc + j] = static_cast<std::uint32_t>(rank[sum]);
      std::uint32_t w = lsolve_at(ring.mul(yp, e_parent));
      std::uint32_t z = rsolve_at(n0, ring.mul(xp, w));
      mul_tab[static_cast<std::size_t>(i) * nc + j] = static_cast<std::uint32_t>(rank[z]);
    }
  }
  m.r0 = build_ring(RingSpec::table(nc, std::move(add_tab), std::move(mul_tab),
                                    "R0(" + ring.descriptor() + ")"));

  // transported conjugation: phi(x) is the unique w with w a = a x
  m.phi.resize(nc);
  for (std::uint32_t i = 0; i < nc; ++i) {
    std::uint32_t w = rsolve_at(1, ring.mul(a_elt, m.carrier[i]));
    m.phi[i] = static_cast<std::uint32_t>(rank[w]);
  }

  // iota_n(g): the unique w in the carrier with w a^n = g a^{n0}
  m.iota.resize(n_max);
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    for (std::uint32_t g : gg.at(n).members()) {
      std::uint32_t w = rsolve_at(n, ring.mul(g, e_parent));
      m.iota[n - 1].emplace_back(g, static_cast<std::uint32_t>(rank[w]));
    }
  }

  // --- exhaustive verification ---
  const FiniteRing& r0 = *m.r0;
  AxiomReport axioms = check_ring_axioms(r0);
  m.checks.axioms_pass = axioms.all_pass;
  m.checks.identity_matches = r0.has_identity() && *r0.one() == m.identity_rank;

  {
    std::vector<bool> seen(nc, false);
    bool perm = true;
    for (std::uint32_t v : m.phi) {
      if (v >= nc || seen[v]) perm = false;
      if (v < nc) seen[v] = true;
    }
    bool hom = perm;
    for (std::uint32_t i = 0; i < nc && hom; ++i)
      for (std::uint32_t j = 0; j < nc && hom; ++j)
        hom = m.phi[r0.add(i, j)] == r0.add(m.phi[i], m.phi[j]) &&
              m.phi[r0.mul(i, j)] == r0.mul(m.phi[i], m.phi[j]);
    m.checks.phi_automorphism = hom && m.phi[m.identity_rank] == m.identity_rank;
  }

  // per-degree lookup tables for the law checks
  std::vector<std::vector<std::int32_t>> iota_of(n_max + 1,
                                                 std::vector<std::int32_t>(ring.size(), -1));
  for (std::uint32_t n = 1; n <= n_max; ++n)
    for (const auto& [g, w] : m.iota[n - 1]) iota_of[n][g] = static_cast<std::int32_t>(w);

  {
    bool additive = true, injective = true;
    for (std::uint32_t n = 1; n <= n_max && additive; ++n) {
      std::vector<std::uint32_t> members = gg.at(n).members();
      std::vector<bool> seen(nc, false);
      for (const auto& [g, w] : m.iota[n - 1]) {
        (void)g;
        if (seen[w]) injective = false;
        seen[w] = true;
      }
      for (std::uint32_t g : members) {
        for (std::uint32_t h : members) {
          std::uint32_t gh = ring.add(g, h);
          if (iota_of[n][gh] !=
              static_cast<std::int32_t>(r0.add(static_cast<std::uint32_t>(iota_of[n][g]),
                                               static_cast<std::uint32_t>(iota_of[n][h])))) {
            additive = false;
            break;
          }
        }
        if (!additive) break;
      }
    }
    m.checks.iota_additive = additive;
    m.checks.iota_injective = injective;
  }

  {
    // phi powers for the degree shift
    std::vector<std::vector<std::uint32_t>> phi_pow(n_max + 1);
    phi_pow[0].resize(nc);
    for (std::uint32_t i = 0; i < nc; ++i) phi_pow[0][i] = i;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
      phi_pow[n].resize(nc);
      for (std::uint32_t i = 0; i < nc; ++i) phi_pow[n][i] = m.phi[phi_pow[n - 1][i]];
    }
    bool law = true, grading = true;
    for (std::uint32_t n = 1; n < gg.n_max() && grading; ++n) {
      if (!dilate(a_elt, gg.at(n), Side::Left).is_subset_of(gg.at(n + 1))) grading = false;
    }
    for (std::uint32_t n = 1; n <= n_max && law && grading; ++n) {
      for (std::uint32_t mm = 1; n + mm <= n_max && law && grading; ++mm) {
        for (std::uint32_t g : gg.at(n).members()) {
          for (std::uint32_t h : gg.at(mm).members()) {
            std::uint32_t gh = ring.mul(g, h);
            if (iota_of[n + mm][gh] < 0) {
              grading = false;  // G_n G_m not inside G_{n+m}
              break;
            }
            std::uint32_t lhs = static_cast<std::uint32_t>(iota_of[n + mm][gh]);
            std::uint32_t rhs =
                r0.mul(static_cast<std::uint32_t>(iota_of[n][g]),
                       phi_pow[n][static_cast<std::uint32_t>(iota_of[mm][h])]);
            if (lhs != rhs) {
              law = false;
              break;
            }
          }
          if (!law || !grading) break;
        }
      }
    }
    m.checks.graded_law = law;
    m.checks.grading_ok = grading;
  }

  require(m.checks.all(), Errc::InternalCheckFailed, "Freiman model verification failed");
  return m;
}

GeneralOutcome homogeneous_structure_general(const RSet& a, const Rational& k,
                                             std::uint32_t n_max, const ZdPolicy& zd,
                                             std::optional<std::uint32_t> a_override) {
  require(!a.empty(), Errc::EmptySet, "homogeneous pipeline over empty set");
  GrowthReport g = growth_report(a);
  require(rat_le(g.k_hom, k), Errc::HypothesisViolated,
          "need |A*A - A*A| <= K|A| and |A*A| >= |A|/K; minimal K is " + g.k_hom.str());

  const RingHandle& ring = a.ring();
  RSet diff = difference_set(a, a);
  std::uint64_t zd_count = diff.bits().and_not_count(ring->non_zero_divisors());
  if (zd.rich(zd_count, a.card(), k)) {
    GeneralOutcome out;
    StructureCertificate cert;
    cert.variant = ZeroDivisorRich{zd_count, Rational::ratio(zd_count, a.card())};
    out.ratio = Rational::ratio(zd_count, a.card());
    out.v = std::move(cert);
    return out;
  }

  std::uint32_t a_elt;
  if (a_override) {
    a_elt = *a_override;
  } else {
    Bitset candidates = diff.bits();
    candidates &= ring->non_zero_divisors();
    std::int64_t first = candidates.first_set();
    require(first >= 0, Errc::NotNonZeroDivisor, "(A-A) ∩ R^* is empty");
    a_elt = static_cast<std::uint32_t>(first);
  }

  GradedGroups gg = compute_graded_groups(a, n_max);
  FreimanModel model = build_freiman_model(a, gg, a_elt, n_max);
  require(a.card() <= model.stable_size, Errc::InternalCheckFailed, "|R0| smaller than |A|");

  GeneralOutcome out;
  out.ratio = Rational::ratio(model.stable_size, a.card());
  out.v = std::move(model);
  return out;
}

}  // namespace sumprod
