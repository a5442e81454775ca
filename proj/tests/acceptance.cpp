// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Usage: acceptance <path-to-sumprod-cli>   (the CLI is needed by criterion 13)

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "sumprod/catalog.hpp"
#include "sumprod/special.hpp"

using namespace sumprod;

namespace {

int failures = 0;
std::string cli;

void criterion(int number, const std::string& what, const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::printf("criterion %2d: %s - %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL",
              what.c_str(), secs, error.empty() ? "" : " error: ", error.c_str());
  if (!ok) ++failures;
}

RSet set_of(const RingHandle& r, std::initializer_list<std::uint32_t> xs) {
  return RSet::of(r, std::vector<std::uint32_t>(xs));
}

RSet random_nonempty(const RingHandle& r, std::uint32_t card, SplitMix64& rng) {
  RSet s(r);
  while (s.card() < card) s.insert(rng.below(r->size()));
  return s;
}

bool run_cmd(const std::string& cmd) { return std::system(cmd.c_str()) == 0; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli = argv[1];

  // 1. Every catalog ring passes the exhaustive axiom scan.
  criterion(1, "catalog rings pass exhaustive ring axioms in < 60s", [] {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& [name, spec] : ring_catalog()) {
      RingHandle r = build_ring(spec);
      if (r->size() > 4096) return false;
      AxiomReport rep = check_ring_axioms(*r);
      if (!rep.all_pass || !rep.exhaustive) {
        std::fprintf(stderr, "  axiom failure in %s\n", name.c_str());
        return false;
      }
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60.0;
  });

  // 2. Ruzsa triangle inequality on 200 seeded triples.
  criterion(2, "|A-C||B| <= |A-B||B-C| on 200 random triples in Z/101 and GF(64), < 10s", [] {
    auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(0x7261);
    for (const char* token : {"z101", "gf64"}) {
      RingHandle r = build_ring(parse_ring_token(token));
      for (int rep = 0; rep < 100; ++rep) {
        RSet a = random_nonempty(r, 1 + rng.below(16), rng);
        RSet b = random_nonempty(r, 1 + rng.below(16), rng);
        RSet c = random_nonempty(r, 1 + rng.below(16), rng);
        if (!triangle_check(a, b, c).holds) return false;
      }
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10.0;
  });

  // 3. Covering witnesses validate on 100 seeded pairs.
  criterion(3, "100 ruzsa_cover witnesses validate with zero failures", [] {
    SplitMix64 rng(0xC07E6);
    for (const char* token : {"z101", "gf64"}) {
      RingHandle r = build_ring(parse_ring_token(token));
      for (int rep = 0; rep < 50; ++rep) {
        RSet a = random_nonempty(r, 1 + rng.below(14), rng);
        RSet b = random_nonempty(r, 1 + rng.below(14), rng);
        CoverMode mode = rep % 2 ? CoverMode::Minus : CoverMode::Plus;
        CoverWitness w = ruzsa_cover(a, b, mode);
        if (!w.covered || !validate_cover(a, b, w)) return false;
        if (b.card() * w.x.card() > w.bound_numerator) return false;
      }
    }
    return true;
  });

  // 4. Plunnecke budget |2A-2A| <= K^4 |A| on 100 seeded subsets of Z/1009.
  criterion(4, "plunnecke budget on 100 random A in Z/1009 with |A| <= 20, < 30s", [] {
    auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(0x1009);
    RingHandle r = build_ring(RingSpec::cyclic(1009));
    for (int rep = 0; rep < 100; ++rep) {
      RSet a = random_nonempty(r, 2 + rng.below(19), rng);
      PlunneckeCheck p = plunnecke_check(a, a, 2, 2, 0, 0);
      if (!p.holds || p.exponent != 4) return false;
      if (!(p.k == Rational::ratio(sumset(a, a).card(), a.card()))) return false;
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 30.0;
  });

  // 5. S_r fixture in GF(9): S_unit at tau = 5 is exactly F_3; properties
  //    (iii),(iv),(vii),(viii),(ix) pass over the scope F_3 \ {0}.
  criterion(5, "GF(9) A=F_3 tau=5: S_unit = F_3 and exact properties pass", [] {
    RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
    RSet a = set_of(gf9, {0, 1, 2});
    SrConfig cfg;
    cfg.threshold_override = 5;
    SrSet s = compute_sr(a, Rational::integer(1), SrTarget::formal_unit(), cfg);
    if (s.saturated || s.members.members() != std::vector<std::uint32_t>{0, 1, 2}) return false;
    SrPropertyReport rep = verify_sr_properties(a, Rational::integer(1), cfg, {1, 2});
    for (const char* name : {"additive_structure", "ring_structure", "reflexivity", "symmetry",
                             "transitivity"}) {
      if (!rep.by_name(name).passed) return false;
    }
    return validate_sr_report(a, Rational::integer(1), cfg, rep);
  });

  // 6. Inhomogeneous pipeline fixtures. tau = 3 is the only threshold that
  //    separates F_3 from the rest of GF(9) when |A| = 2 (inside stays <= 3,
  //    outside reaches 4); tau = 10 plays the same role for the diagonal.
  criterion(6, "inhomogeneous: GF(9) {1,2} -> Subring{F_3}; F_5xF_5 diagonal -> itself", [] {
    RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
    RSet a = set_of(gf9, {1, 2});
    SrConfig cfg;
    cfg.threshold_override = 3;
    StructureCertificate cert = inhomogeneous_structure(
        a, Rational::of(3, 2), cfg, ZdPolicy::explicit_threshold(Rational::of(3, 4)));
    if (!cert.is_subring()) return false;
    const SubringCert& s = std::get<SubringCert>(cert.variant);
    if (s.s.members() != std::vector<std::uint32_t>{0, 1, 2}) return false;
    if (!(s.ratio == Rational::of(3, 2))) return false;
    if (!(subring_closure(s.s) == s.s)) return false;
    if (!validate_certificate(a, cert)) return false;

    RingHandle f55 = build_ring(RingSpec::product({RingSpec::cyclic(5), RingSpec::cyclic(5)}));
    RSet diag(f55);
    for (std::uint32_t x = 0; x < 5; ++x) diag.insert(f55->embed({x, x}));
    SrConfig cfg2;
    cfg2.threshold_override = 10;
    StructureCertificate cert2 = inhomogeneous_structure(diag, Rational::integer(1), cfg2);
    if (!cert2.is_subring()) return false;
    if (!(std::get<SubringCert>(cert2.variant).s == diag)) return false;
    return validate_certificate(diag, cert2);
  });

  // 7. Homogeneous-invertible fixture.
  criterion(7, "GF(9) A={a,2a}, pivot a, tau=3 -> DilatedSubring{F_3}, normalizing", [] {
    RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
    RSet a = set_of(gf9, {3, 6});
    SrConfig cfg;
    cfg.threshold_override = 3;
    StructureCertificate cert = homogeneous_structure_invertible(
        a, Rational::of(3, 2), 3, cfg, ZdPolicy::explicit_threshold(Rational::of(3, 4)));
    if (!cert.is_dilated()) return false;
    const DilatedSubringCert& d = std::get<DilatedSubringCert>(cert.variant);
    if (d.s.members() != std::vector<std::uint32_t>{0, 1, 2}) return false;
    if (d.a != 3 || !d.normalizes) return false;
    return validate_certificate(a, cert);
  });

  // 8. Freiman model fixture: |R0| = 3, axioms pass, trivial twist, iota laws
  //    exhaustive for n+m <= 6.
  criterion(8, "GF(9) A={a,2a}: Freiman model |R0|=3, phi=id, graded law, < 5s", [] {
    auto t0 = std::chrono::steady_clock::now();
    RingHandle gf9 = build_ring(RingSpec::galois(3, 2, {1, 0, 1}));
    RSet a = set_of(gf9, {3, 6});
    GeneralOutcome out = homogeneous_structure_general(
        a, Rational::of(3, 2), 6, ZdPolicy::explicit_threshold(Rational::of(3, 4)));
    if (!out.is_model()) return false;
    const FreimanModel& m = out.model();
    if (m.stable_size != 3) return false;
    if (!m.checks.all()) return false;
    if (!check_ring_axioms(*m.r0).all_pass) return false;
    for (std::uint32_t i = 0; i < 3; ++i)
      if (m.phi[i] != i) return false;
    if (!(out.ratio == Rational::of(3, 2))) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0;
  });

  // 9. Katz-Tao guarantees over a 50-instance seeded suite in GF(p).
  criterion(9, "Katz-Tao: |A'| >= |A|/2K and the pair-count bound on 50 instances", [] {
    SplitMix64 rng(0x4B54);
    std::uint32_t primes[3] = {7, 11, 13};
    int good = 0;
    for (int i = 0; i < 50; ++i) {
      std::uint32_t p = primes[i % 3];
      RingHandle r = build_ring(RingSpec::cyclic(p));
      std::uint32_t want = 3 + rng.below(p - 3);
      RSet a(r);
      while (a.card() < want) a.insert(1 + rng.below(p - 1));
      Rational k = rat_max(Rational::ratio(sumset(a, a).card(), a.card()),
                           Rational::ratio(product_set(a, a).card(), a.card()));
      k = rat_max(k, Rational::integer(1));
      // pair-count lower bound, exact integers: sum * |A*A| >= |A|^4
      std::uint64_t sum = pair_count_sum(a);
      std::uint64_t card = a.card();
      if (BigUint(sum).mul(product_set(a, a).card()).cmp(BigUint(card).mul_pow(card, 3)) < 0)
        return false;
      ExtractionOutcome out = katz_tao_extract(a, k);
      if (!out.is_zd_rich()) {
        ++good;
        const GoodSubset& g = out.good();
        bool guarantee = static_cast<unsigned __int128>(g.a_prime.card()) * 2 *
                             static_cast<std::uint64_t>(k.num) >=
                         static_cast<unsigned __int128>(card) *
                             static_cast<std::uint64_t>(k.den);
        if (!guarantee || !g.a_prime.is_subset_of(a)) return false;
        if (!validate_extraction(a, k, ZdPolicy{}, out)) return false;
      }
    }
    return good > 0;
  });

  // 10. Zero-divisor branch fixture in F_3 x F_3 across three pipelines.
  criterion(10, "F_3xF_3 {(1,1),(2,1)}: extraction, inhom, product all zero-divisor-rich", [] {
    RingHandle r = build_ring(RingSpec::product({RingSpec::cyclic(3), RingSpec::cyclic(3)}));
    RSet a = set_of(r, {4, 5});
    Rational k = Rational::of(3, 2);
    ExtractionOutcome e = katz_tao_extract(a, k);
    if (!e.is_zd_rich() || rat_lt(e.zd().ratio, Rational::integer(1))) return false;
    StructureCertificate c = inhomogeneous_structure(a, k, SrConfig{});
    if (!c.is_zd_rich()) return false;
    if (rat_lt(std::get<ZeroDivisorRich>(c.variant).ratio, Rational::integer(1))) return false;
    ProductExperimentResult pr = product_ring_experiment(a, k);
    if (pr.branch != 1 || !pr.j || *pr.j != 1) return false;
    return Rational::ratio(pr.a_j_sizes[1], a.card()) == Rational::of(3, 2);
  });

  // 11. Cyclic fixtures: exact cover of 3R, and the dense unit branch.
  criterion(11, "Z/9: {0,3,6} covers into 3R exactly; units -> branch 2, density 2/3", [] {
    RingHandle z9 = build_ring(RingSpec::cyclic(9));
    CyclicExperimentResult c1 =
        cyclic_ring_experiment(set_of(z9, {0, 3, 6}), Rational::integer(1));
    if (c1.branch != 1 || !c1.cover_verified) return false;
    if (c1.cover->x.members() != std::vector<std::uint32_t>{0}) return false;
    CyclicExperimentResult c2 = cyclic_ring_experiment(
        set_of(z9, {1, 2, 4, 5, 7, 8}), Rational::of(3, 2), SrConfig{},
        ZdPolicy::explicit_threshold(Rational::integer(1)));
    if (c2.branch != 2) return false;
    return c2.density == Rational::of(2, 3);
  });

  // 12. Annihilator cross-check in M_2(F_2).
  criterion(12, "M_2(F_2): max all-zero-divisor subspace dim = 2, six planes, < 30s", [] {
    auto t0 = std::chrono::steady_clock::now();
    M2AnnihilatorResult res = m2_annihilator_spaces(build_ring(parse_ring_token("m2_2")));
    if (res.spaces.size() != 6 || res.searcher_max_dim != 2) return false;
    if (res.searcher_dim2_count != 6 || !res.cross_check_ok) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 30.0;
  });

  // 13. Byte-identical sweep outputs across SUMPROD_THREADS in {1, 8}.
  criterion(13, "sweep suite identical under SUMPROD_THREADS=1 and =8 (json and csv)", [] {
    if (cli.empty()) {
      std::fprintf(stderr, "  pass the sumprod CLI path as argv[1]\n");
      return false;
    }
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sumprod_acceptance";
    fs::create_directories(dir);
    struct Sweep {
      const char* name;
      const char* args;
    } sweeps[] = {
        {"inhom", "--recipe inhom --rings z16,z25,gf16,gf27,p3x3,p5x5 --gen random:6 --seed 101 --reps 2"},
        {"cyclic", "--recipe cyclic --rings z9,z25,z27,z49 --gen random:8 --seed 7 --reps 2"},
        {"freiman", "--recipe freiman --rings gf9,gf25,z11 --gen random:4 --seed 13 --reps 2"},
        {"division", "--recipe division --rings gf9,gf16,z13 --gen random:5 --seed 5 --reps 2"},
        {"product", "--recipe product --rings p3x3,p5x5,p7x7 --gen random:6 --seed 9 --reps 2"},
    };
    for (const auto& s : sweeps) {
      for (const char* fmt : {"json", "csv"}) {
        std::string f1 = (dir / (std::string(s.name) + "_1." + fmt)).string();
        std::string f8 = (dir / (std::string(s.name) + "_8." + fmt)).string();
        std::string base = cli + " sweep " + s.args + " --format " + fmt;
        if (!run_cmd("SUMPROD_THREADS=1 " + base + " --out " + f1)) return false;
        if (!run_cmd("SUMPROD_THREADS=8 " + base + " --out " + f8)) return false;
        std::string b1 = slurp(f1), b8 = slurp(f8);
        if (b1.empty() || b1 != b8) {
          std::fprintf(stderr, "  mismatch in %s (%s)\n", s.name, fmt);
          return false;
        }
      }
    }
    return true;
  });

  std::printf("%s: %d/13 criteria passed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              13 - failures);
  return failures == 0 ? 0 : 1;
}
