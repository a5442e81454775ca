#include "sumprod/sr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sumprod {

namespace {

constexpr std::size_t kWitnessCap = 8;

// |x*A + rA| accumulated into buf, early abort once the count exceeds limit.
std::uint64_t union_size_bounded(const FiniteRing& ring, const std::vector<std::uint32_t>& xa,
                                 const std::vector<std::uint32_t>& ra, Bitset& buf,
                                 std::uint64_t limit) {
  buf.clear();
  std::uint64_t cnt = 0;
  for (std::uint32_t u : xa) {
    for (std::uint32_t v : ra) {
      std::uint32_t s = ring.add(u, v);
      if (!buf.test(s)) {
        buf.set(s);
        if (++cnt > limit) return cnt;
      }
    }
  }
  return cnt;
}

}  // namespace

std::pair<std::uint64_t, bool> sr_threshold(const RSet& a, const Rational& k,
                                            const SrConfig& cfg) {
  std::uint64_t n = a.ring()->size();
  std::uint64_t raw;
  if (cfg.threshold_override) {
    raw = std::min<std::uint64_t>(*cfg.threshold_override, n);
    return {raw, *cfg.threshold_override >= n};
  }
  raw = floor_pow_scaled(k, cfg.c0, a.card(), n);  // clamped to n
  return {raw, raw >= n};
}

std::vector<std::uint64_t> sr_values(const RSet& a, SrTarget r) {
  require(!a.empty(), Errc::EmptySet, "S_r of empty set");
  const FiniteRing& ring = *a.ring();
  RSet ra = r.formal ? a : dilate(r.index, a, Side::Left);
  std::vector<std::uint32_t> ra_m = ra.members();
  std::vector<std::uint32_t> a_m = a.members();
  std::vector<std::uint64_t> out(ring.size());
  Bitset buf(ring.size());
  std::vector<std::uint32_t> xa(a_m.size());
  for (std::uint32_t x = 0; x < ring.size(); ++x) {
    for (std::size_t i = 0; i < a_m.size(); ++i) xa[i] = ring.mul(x, a_m[i]);
    out[x] = union_size_bounded(ring, xa, ra_m, buf, std::numeric_limits<std::uint64_t>::max());
  }
  return out;
}

SrSet compute_sr(const RSet& a, const Rational& k, SrTarget r, const SrConfig& cfg) {
  require(!a.empty(), Errc::EmptySet, "S_r of empty set");
  const FiniteRing& ring = *a.ring();
  auto [tau, saturated] = sr_threshold(a, k, cfg);

  SrSet s;
  s.r = r;
  s.tau = tau;
  s.saturated = saturated;
  if (saturated) {
    s.members = RSet::full(a.ring());
    return s;
  }

  RSet ra = r.formal ? a : dilate(r.index, a, Side::Left);
  std::vector<std::uint32_t> ra_m = ra.members();
  std::vector<std::uint32_t> a_m = a.members();
  s.members = RSet(a.ring());
  Bitset buf(ring.size());
  std::vector<std::uint32_t> xa(a_m.size());
  for (std::uint32_t x = 0; x < ring.size(); ++x) {
    for (std::size_t i = 0; i < a_m.size(); ++i) xa[i] = ring.mul(x, a_m[i]);
    if (union_size_bounded(ring, xa, ra_m, buf, tau) <= tau) s.members.insert(x);
  }
  if (!r.formal && sumset(a, a).card() <= tau) {
    // |r(A+A)| <= |A+A| <= tau forces r into S_r
    require(s.members.contains(r.index), Errc::InternalCheckFailed,
            "reflexivity violated with |A+A| <= tau");
  }
  return s;
}

// --- property verification --------------------------------------------------

namespace {

// Value-vector cache keyed by target; sets at any tau are slices of these.
class SrEngine {
 public:
  SrEngine(const RSet& a) : a_(a), ring_(*a.ring()) {}

  const std::vector<std::uint64_t>& values(SrTarget t) {
    std::int64_t key = t.formal ? -1 : static_cast<std::int64_t>(t.index);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, sr_values(a_, t)).first;
    return it->second;
  }

  bool member(SrTarget t, std::uint32_t x, std::uint64_t tau) { return values(t)[x] <= tau; }

  std::vector<std::uint32_t> set_at(SrTarget t, std::uint64_t tau) {
    const auto& v = values(t);
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < v.size(); ++x)
      if (v[x] <= tau) out.push_back(x);
    return out;
  }

  const FiniteRing& ring() { return ring_; }

 private:
  const RSet& a_;
  const FiniteRing& ring_;
  std::map<std::int64_t, std::vector<std::uint64_t>> cache_;
};

std::uint32_t target_code(const FiniteRing& ring, SrTarget t) {
  return t.formal ? ring.size() : t.index;
}

using Witnesses = std::vector<std::vector<std::uint32_t>>;

std::vector<std::uint64_t> candidate_taus(SrEngine& eng, const std::vector<SrTarget>& targets) {
  std::vector<std::uint64_t> c;
  for (const auto& t : targets) {
    const auto& v = eng.values(t);
    c.insert(c.end(), v.begin(), v.end());
  }
  c.push_back(eng.ring().size());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

const SrPropertyCheck& SrPropertyReport::by_name(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  fail(Errc::InternalCheckFailed, "no such property check: " + name);
}

SrPropertyReport verify_sr_properties(const RSet& a, const Rational& k, const SrConfig& cfg,
                                      const std::vector<std::uint32_t>& scope) {
  require(!a.empty(), Errc::EmptySet, "property verification over empty set");
  require(k.num >= k.den, Errc::HypothesisViolated, "K must be >= 1");
  const FiniteRing& ring = *a.ring();
  SrPropertyReport rep;
  rep.k = k;
  rep.c0 = cfg.c0;

  RSet aa = product_set(a, a);
  RSet diff = difference_set(a, a);
  rep.h_prod = aa.card();
  rep.h_prod_diff = difference_set(aa, aa).card();
  rep.h_zd_diff = diff.bits().and_not_count(ring.non_zero_divisors());
  bool h1 = le_times(rep.h_prod_diff, k, a.card());
  bool h2 = ge_times(rep.h_prod, Rational::of(k.den, k.num), a.card());
  bool h3 = lt_inv_pow(rep.h_zd_diff, a.card(), k, cfg.c0);
  rep.hypotheses_ok = h1 && h2 && h3;

  auto [tau, saturated] = sr_threshold(a, k, cfg);
  rep.tau = tau;
  rep.saturated = saturated;

  // scopes: sorted, deduplicated; restricted to R^* where required
  std::vector<std::uint32_t> scope_all = scope;
  std::sort(scope_all.begin(), scope_all.end());
  scope_all.erase(std::unique(scope_all.begin(), scope_all.end()), scope_all.end());
  for (std::uint32_t r : scope_all) ring.check_index(r);
  std::vector<std::uint32_t> scope_star;
  for (std::uint32_t r : scope_all)
    if (!ring.is_zero_divisor(r)) scope_star.push_back(r);

  std::vector<SrTarget> rtargets;  // scope ∩ R^* plus the formal unit
  for (std::uint32_t r : scope_star) rtargets.push_back(SrTarget::element(r));
  rtargets.push_back(SrTarget::formal_unit());

  SrEngine eng(a);
  bool applicable = rep.hypotheses_ok && !saturated;

  auto exact_check = [&](const char* name, auto&& runner,
                         const std::vector<SrTarget>& cand_targets) {
    SrPropertyCheck c;
    c.name = name;
    if (saturated) {
      c.passed = true;  // S_r = R for every r; closure is vacuous
      c.applicable = false;
      rep.checks.push_back(std::move(c));
      return;
    }
    Witnesses wit;
    c.passed = runner(tau, &wit);
    c.witnesses = std::move(wit);
    c.applicable = applicable;
    if (!c.passed) {
      for (std::uint64_t t : candidate_taus(eng, cand_targets)) {
        if (runner(t, nullptr)) {
          c.min_passing_tau = t;
          break;
        }
      }
    }
    rep.checks.push_back(std::move(c));
  };

  // (i) self-improving: measured max of log_K(|xA + rA| / |A|) over x in S_r
  {
    SrPropertyCheck c;
    c.name = "self_improving";
    c.applicable = applicable;
    c.passed = true;
    double max_e = 0.0;
    bool seen = false;
    for (const auto& t : rtargets) {
      const auto& v = eng.values(t);
      for (std::uint32_t x = 0; x < ring.size(); ++x) {
        if (v[x] > tau) continue;
        double ratio = static_cast<double>(v[x]) / static_cast<double>(a.card());
        double e;
        if (k.num == k.den) {
          e = ratio <= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
          e = std::log(ratio) / std::log(k.to_double());
        }
        max_e = seen ? std::max(max_e, e) : e;
        seen = true;
      }
    }
    if (seen) c.measured_exponent = max_e;
    rep.checks.push_back(std::move(c));
  }

  // (ii) size bound: measured max of log_K(|S_r| / |A|)
  {
    SrPropertyCheck c;
    c.name = "size_bound";
    c.applicable = applicable;
    c.passed = true;
    double max_e = 0.0;
    bool seen = false;
    for (const auto& t : rtargets) {
      std::uint64_t size = eng.set_at(t, tau).size();
      if (size == 0) continue;
      double ratio = static_cast<double>(size) / static_cast<double>(a.card());
      double e;
      if (k.num == k.den) {
        e = ratio <= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        e = std::log(ratio) / std::log(k.to_double());
      }
      max_e = seen ? std::max(max_e, e) : e;
      seen = true;
    }
    if (seen) c.measured_exponent = max_e;
    rep.checks.push_back(std::move(c));
  }

  // (iii) additive structure: S_r closed under + and -
  exact_check(
      "additive_structure",
      [&](std::uint64_t t, Witnesses* wit) {
        bool pass = true;
        for (const auto& rt : rtargets) {
          auto s = eng.set_at(rt, t);
          for (std::uint32_t x : s) {
            for (std::uint32_t y : s) {
              std::uint32_t sum = ring.add(x, y), d = ring.sub(x, y);
              if (!eng.member(rt, sum, t)) {
                pass = false;
                if (wit && wit->size() < kWitnessCap)
                  wit->push_back({target_code(ring, rt), x, y, 0});
              }
              if (!eng.member(rt, d, t)) {
                pass = false;
                if (wit && wit->size() < kWitnessCap)
                  wit->push_back({target_code(ring, rt), x, y, 1});
              }
              if (!pass && !wit) return false;
            }
          }
        }
        return pass;
      },
      rtargets);

  // (iv) ring structure: S_unit additionally closed under *
  exact_check(
      "ring_structure",
      [&](std::uint64_t t, Witnesses* wit) {
        bool pass = true;
        SrTarget u = SrTarget::formal_unit();
        auto s = eng.set_at(u, t);
        for (std::uint32_t x : s) {
          for (std::uint32_t y : s) {
            if (!eng.member(u, ring.mul(x, y), t)) {
              pass = false;
              if (wit && wit->size() < kWitnessCap) wit->push_back({x, y});
              if (!wit) return false;
            }
          }
        }
        return pass;
      },
      {SrTarget::formal_unit()});

  // (v) right-multiplicative: S_r * S_a ⊆ S_{ra} for a in scope ∩ (A-A) ∩ R^*
  {
    std::vector<std::uint32_t> amults;
    for (std::uint32_t x : scope_star)
      if (diff.contains(x)) amults.push_back(x);
    std::vector<SrTarget> cand = rtargets;
    for (std::uint32_t r : scope_star)
      for (std::uint32_t am : amults) cand.push_back(SrTarget::element(ring.mul(r, am)));
    for (std::uint32_t am : amults) cand.push_back(SrTarget::element(am));
    exact_check(
        "right_multiplicative",
        [&, amults](std::uint64_t t, Witnesses* wit) {
          bool pass = true;
          for (std::uint32_t r : scope_star) {
            auto sr = eng.set_at(SrTarget::element(r), t);
            for (std::uint32_t am : amults) {
              auto sa = eng.set_at(SrTarget::element(am), t);
              SrTarget ra = SrTarget::element(ring.mul(r, am));
              for (std::uint32_t x : sr) {
                for (std::uint32_t y : sa) {
                  if (!eng.member(ra, ring.mul(x, y), t)) {
                    pass = false;
                    if (wit && wit->size() < kWitnessCap) wit->push_back({r, am, x, y});
                    if (!wit) return false;
                  }
                }
              }
            }
          }
          return pass;
        },
        cand);
  }

  // (vi) left-multiplicative: s * S_r ⊆ S_{sr} for s in scope
  {
    std::vector<SrTarget> cand = rtargets;
    for (std::uint32_t s : scope_all) {
      for (const auto& rt : rtargets)
        cand.push_back(rt.formal ? SrTarget::element(s)
                                 : SrTarget::element(ring.mul(s, rt.index)));
    }
    exact_check(
        "left_multiplicative",
        [&](std::uint64_t t, Witnesses* wit) {
          bool pass = true;
          for (std::uint32_t s : scope_all) {
            for (const auto& rt : rtargets) {
              SrTarget srt = rt.formal ? SrTarget::element(s)
                                       : SrTarget::element(ring.mul(s, rt.index));
              for (std::uint32_t x : eng.set_at(rt, t)) {
                if (!eng.member(srt, ring.mul(s, x), t)) {
                  pass = false;
                  if (wit && wit->size() < kWitnessCap)
                    wit->push_back({s, target_code(ring, rt), x});
                  if (!wit) return false;
                }
              }
            }
          }
          return pass;
        },
        cand);
  }

  // (vii) reflexivity: r in S_r
  {
    std::vector<SrTarget> cand;
    for (std::uint32_t r : scope_star) cand.push_back(SrTarget::element(r));
    exact_check(
        "reflexivity",
        [&](std::uint64_t t, Witnesses* wit) {
          bool pass = true;
          for (std::uint32_t r : scope_star) {
            if (!eng.member(SrTarget::element(r), r, t)) {
              pass = false;
              if (wit && wit->size() < kWitnessCap) wit->push_back({r});
              if (!wit) return false;
            }
          }
          return pass;
        },
        cand);
  }

  // (viii) symmetry: r in S_s iff s in S_r, over all scope pairs
  {
    std::vector<SrTarget> cand;
    for (std::uint32_t r : scope_all) cand.push_back(SrTarget::element(r));
    exact_check(
        "symmetry",
        [&](std::uint64_t t, Witnesses* wit) {
          bool pass = true;
          for (std::uint32_t r : scope_all) {
            for (std::uint32_t s : scope_all) {
              bool rs = eng.member(SrTarget::element(s), r, t);
              bool sr = eng.member(SrTarget::element(r), s, t);
              if (rs != sr) {
                pass = false;
                if (wit && wit->size() < kWitnessCap) wit->push_back({r, s});
                if (!wit) return false;
              }
            }
          }
          return pass;
        },
        cand);
  }

  // (ix) transitivity: S_r ∩ S_s ∩ R^* nonempty forces S_r = S_s
  {
    std::vector<SrTarget> cand;
    for (std::uint32_t r : scope_star) cand.push_back(SrTarget::element(r));
    exact_check(
        "transitivity",
        [&](std::uint64_t t, Witnesses* wit) {
          bool pass = true;
          for (std::uint32_t r : scope_star) {
            const auto& vr = eng.values(SrTarget::element(r));
            for (std::uint32_t s : scope_star) {
              const auto& vs = eng.values(SrTarget::element(s));
              bool meet = false;
              for (std::uint32_t x = 0; x < ring.size() && !meet; ++x)
                meet = vr[x] <= t && vs[x] <= t && !ring.is_zero_divisor(x);
              if (!meet) continue;
              bool equal = true;
              for (std::uint32_t x = 0; x < ring.size() && equal; ++x)
                equal = (vr[x] <= t) == (vs[x] <= t);
              if (!equal) {
                pass = false;
                if (wit && wit->size() < kWitnessCap) wit->push_back({r, s});
                if (!wit) return false;
              }
            }
          }
          return pass;
        },
        cand);
  }

  return rep;
}

bool validate_sr_report(const RSet& a, const Rational& k, const SrConfig& cfg,
                        const SrPropertyReport& report) {
  const FiniteRing& ring = *a.ring();
  SrEngine eng(a);
  auto [tau, saturated] = sr_threshold(a, k, cfg);
  if (tau != report.tau || saturated != report.saturated) return false;
  auto decode = [&](std::uint32_t code) {
    return code == ring.size() ? SrTarget::formal_unit() : SrTarget::element(code);
  };
  for (const auto& c : report.checks) {
    if (c.passed && !c.witnesses.empty()) return false;
    for (const auto& w : c.witnesses) {
      bool reproduces = false;
      if (c.name == "additive_structure" && w.size() == 4) {
        SrTarget rt = decode(w[0]);
        std::uint32_t z = w[3] == 0 ? ring.add(w[1], w[2]) : ring.sub(w[1], w[2]);
        reproduces = eng.member(rt, w[1], tau) && eng.member(rt, w[2], tau) &&
                     !eng.member(rt, z, tau);
      } else if (c.name == "ring_structure" && w.size() == 2) {
        SrTarget u = SrTarget::formal_unit();
        reproduces = eng.member(u, w[0], tau) && eng.member(u, w[1], tau) &&
                     !eng.member(u, ring.mul(w[0], w[1]), tau);
      } else if (c.name == "right_multiplicative" && w.size() == 4) {
        reproduces = eng.member(SrTarget::element(w[0]), w[2], tau) &&
                     eng.member(SrTarget::element(w[1]), w[3], tau) &&
                     !eng.member(SrTarget::element(ring.mul(w[0], w[1])),
                                 ring.mul(w[2], w[3]), tau);
      } else if (c.name == "left_multiplicative" && w.size() == 3) {
        SrTarget rt = decode(w[1]);
        SrTarget srt = rt.formal ? SrTarget::element(w[0])
                                 : SrTarget::element(ring.mul(w[0], rt.index));
        reproduces = eng.member(rt, w[2], tau) && !eng.member(srt, ring.mul(w[0], w[2]), tau);
      } else if (c.name == "reflexivity" && w.size() == 1) {
        reproduces = !eng.member(SrTarget::element(w[0]), w[0], tau);
      } else if (c.name == "symmetry" && w.size() == 2) {
        reproduces = eng.member(SrTarget::element(w[1]), w[0], tau) !=
                     eng.member(SrTarget::element(w[0]), w[1], tau);
      } else if (c.name == "transitivity" && w.size() == 2) {
        const auto& vr = eng.values(SrTarget::element(w[0]));
        const auto& vs = eng.values(SrTarget::element(w[1]));
        bool meet = false, equal = true;
        for (std::uint32_t x = 0; x < ring.size(); ++x) {
          if (vr[x] <= tau && vs[x] <= tau && !ring.is_zero_divisor(x)) meet = true;
          if ((vr[x] <= tau) != (vs[x] <= tau)) equal = false;
        }
        reproduces = meet && !equal;
      }
      if (!reproduces) return false;
    }
  }
  return true;
}

}  // namespace sumprod
