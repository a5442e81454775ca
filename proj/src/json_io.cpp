#include "sumprod/json_io.hpp"

namespace sumprod {

Json to_json(const Rational& r) {
  return Json{{"num", r.num}, {"den", r.den}, {"str", r.str()}, {"approx", r.to_double()}};
}

Json to_json(const RSet& s) {
  Json j{{"card", s.card()}, {"members", s.members()}};
  // symbolic rendering for structured element encodings
  if (s.ring() && s.ring()->kind() != RingKind::Cyclic && s.card() <= 128) {
    std::vector<std::string> names;
    s.bits().for_each([&](std::uint32_t x) { names.push_back(s.ring()->element_name(x)); });
    j["names"] = std::move(names);
  }
  return j;
}

Json to_json(const GrowthReport& g, const FiniteRing& ring) {
  return Json{{"kind", "growth"},
              {"ring", ring.descriptor()},
              {"card_a", g.card_a},
              {"size_sum", g.size_sum},
              {"size_diff", g.size_diff},
              {"size_prod", g.size_prod},
              {"size_prod_diff", g.size_prod_diff},
              {"size_sum_prod", g.size_sum_prod},
              {"ratio_sum", to_json(g.ratio_sum)},
              {"ratio_diff", to_json(g.ratio_diff)},
              {"ratio_prod", to_json(g.ratio_prod)},
              {"ratio_prod_diff", to_json(g.ratio_prod_diff)},
              {"ratio_sum_prod", to_json(g.ratio_sum_prod)},
              {"zd_in_diff", g.zd_in_diff},
              {"k_inhom", to_json(g.k_inhom)},
              {"k_hom", to_json(g.k_hom)}};
}

Json to_json(const AxiomReport& r) {
  Json results = Json::array();
  for (const auto& res : r.results) {
    Json j{{"name", res.name}, {"pass", res.pass}, {"exhaustive", res.exhaustive}};
    if (res.witness) j["witness"] = *res.witness;
    results.push_back(std::move(j));
  }
  return Json{{"kind", "axiom_report"},
              {"all_pass", r.all_pass},
              {"exhaustive", r.exhaustive},
              {"mul_commutative", r.mul_commutative},
              {"results", std::move(results)}};
}

Json to_json(const CoverWitness& w) {
  return Json{{"kind", "cover_witness"},
              {"mode", w.mode == CoverMode::Plus ? "plus" : "minus"},
              {"x", to_json(w.x)},
              {"bound_numerator", w.bound_numerator},
              {"card_b", w.card_b},
              {"bound", to_json(w.bound)},
              {"covered", w.covered}};
}

Json to_json(const TriangleCheck& t) {
  return Json{{"kind", "triangle_check"}, {"lhs", t.lhs}, {"rhs", t.rhs}, {"holds", t.holds}};
}

Json to_json(const PlunneckeCheck& p) {
  return Json{{"kind", "plunnecke_check"},
              {"measured", p.measured},
              {"k", to_json(p.k)},
              {"exponent", p.exponent},
              {"holds", p.holds},
              {"measured_over_card_a", to_json(p.measured_over_card_a)}};
}

Json to_json(const ExtractionOutcome& o) {
  if (o.is_zd_rich()) {
    const ZeroDivisorRich& z = o.zd();
    return Json{{"kind", "extraction"},
                {"variant", "ZeroDivisorRich"},
                {"count", z.count},
                {"ratio", to_json(z.ratio)}};
  }
  const GoodSubset& g = o.good();
  return Json{{"kind", "extraction"},
              {"variant", "GoodSubset"},
              {"a_prime", to_json(g.a_prime)},
              {"b0", g.b0},
              {"measured_ratio", to_json(g.measured_ratio)},
              {"pair_count_sum", g.pair_count_sum}};
}

Json to_json(const SrSet& s) {
  return Json{{"kind", "sr_set"},
              {"r", s.r.str()},
              {"tau", s.tau},
              {"saturated", s.saturated},
              {"members", to_json(s.members)}};
}

Json to_json(const SrPropertyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"name", c.name},
           {"applicable", c.applicable},
           {"passed", c.passed},
           {"witnesses", c.witnesses}};
    if (c.measured_exponent) j["measured_exponent"] = *c.measured_exponent;
    if (c.min_passing_tau) j["min_passing_tau"] = *c.min_passing_tau;
    checks.push_back(std::move(j));
  }
  return Json{{"kind", "sr_property_report"},
              {"k", to_json(r.k)},
              {"c0", r.c0},
              {"tau", r.tau},
              {"saturated", r.saturated},
              {"hypotheses_ok", r.hypotheses_ok},
              {"size_prod_diff", r.h_prod_diff},
              {"size_prod", r.h_prod},
              {"zd_in_diff", r.h_zd_diff},
              {"checks", std::move(checks)}};
}

Json to_json(const StructureCertificate& c) {
  Json j{{"kind", "structure_certificate"},
         {"variant", c.variant_name()},
         {"tau_used", c.tau_used},
         {"tau_escalated", c.tau_escalated},
         {"findings", c.findings}};
  if (c.is_zd_rich()) {
    const ZeroDivisorRich& z = std::get<ZeroDivisorRich>(c.variant);
    j["count"] = z.count;
    j["ratio"] = to_json(z.ratio);
  } else if (c.is_subring()) {
    const SubringCert& s = std::get<SubringCert>(c.variant);
    j["s"] = to_json(s.s);
    j["ratio"] = to_json(s.ratio);
  } else if (c.is_dilated()) {
    const DilatedSubringCert& d = std::get<DilatedSubringCert>(c.variant);
    j["s"] = to_json(d.s);
    j["a"] = d.a;
    j["normalizes"] = d.normalizes;
    j["ratio"] = to_json(d.ratio);
  } else {
    j["tau"] = std::get<SaturatedCert>(c.variant).tau;
  }
  return j;
}

Json to_json(const FreimanModel& m) {
  Json iota = Json::object();
  for (std::size_t n = 1; n <= m.iota.size(); ++n) {
    Json pairs = Json::array();
    for (const auto& [g, w] : m.iota[n - 1]) pairs.push_back(Json::array({g, w}));
    iota[std::to_string(n)] = std::move(pairs);
  }
  // digest the transported tables for compact fixture comparison
  std::uint32_t nc = static_cast<std::uint32_t>(m.carrier.size());
  std::vector<std::uint32_t> add_flat, mul_flat;
  add_flat.reserve(static_cast<std::size_t>(nc) * nc);
  mul_flat.reserve(add_flat.capacity());
  for (std::uint32_t i = 0; i < nc; ++i)
    for (std::uint32_t j = 0; j < nc; ++j) {
      add_flat.push_back(m.r0->add(i, j));
      mul_flat.push_back(m.r0->mul(i, j));
    }
  return Json{{"kind", "freiman_model"},
              {"a", m.a_elt},
              {"n0", m.n0},
              {"carrier_size", m.stable_size},
              {"carrier", m.carrier},
              {"identity_rank", m.identity_rank},
              {"add_digest", fnv1a64_hex(add_flat.data(), add_flat.size() * 4)},
              {"mul_digest", fnv1a64_hex(mul_flat.data(), mul_flat.size() * 4)},
              {"phi", m.phi},
              {"iota", std::move(iota)},
              {"checks",
               Json{{"axioms_pass", m.checks.axioms_pass},
                    {"identity_matches", m.checks.identity_matches},
                    {"phi_automorphism", m.checks.phi_automorphism},
                    {"iota_additive", m.checks.iota_additive},
                    {"iota_injective", m.checks.iota_injective},
                    {"graded_law", m.checks.graded_law},
                    {"grading_ok", m.checks.grading_ok}}}};
}

Json to_json(const GeneralOutcome& o) {
  Json j{{"kind", "homogeneous_general"}, {"ratio", to_json(o.ratio)}};
  if (o.is_model()) {
    j["variant"] = "FreimanModel";
    j["model"] = to_json(o.model());
  } else {
    j["variant"] = o.cert().variant_name();
    j["certificate"] = to_json(o.cert());
  }
  return j;
}

Json to_json(const AffineWitness& w) {
  Json rows = Json::array();
  for (const auto& row : w.basis_coords) rows.push_back(std::vector<int>(row.begin(), row.end()));
  return Json{{"kind", "affine_witness"},
              {"dim", w.dim},
              {"basis_elements", w.basis_elements},
              {"basis_coords", std::move(rows)},
              {"offset", w.offset},
              {"overlap", w.overlap},
              {"affine_all_zd", w.affine_all_zd}};
}

Json to_json(const DivisionExperimentResult& r) {
  Json j{{"kind", "division_experiment"},
         {"k_input", to_json(r.k_input)},
         {"k_kt", to_json(r.k_kt)},
         {"k_hom", to_json(r.k_hom)},
         {"certificate", to_json(r.certificate)},
         {"cover_verified", r.cover_verified}};
  if (r.extraction) j["extraction"] = to_json(*r.extraction);
  if (r.cover) j["cover"] = to_json(*r.cover);
  return j;
}

Json to_json(const ProductExperimentResult& r) {
  Json j{{"kind", "product_experiment"},
         {"branch", r.branch},
         {"a_j_sizes", r.a_j_sizes},
         {"proj_sizes", r.profile.proj_sizes},
         {"fiber_max", r.profile.fiber_max}};
  if (r.j) j["j"] = *r.j;
  if (r.branch == 1) j["inequality_ok"] = r.inequality_ok;
  if (r.branch == 2) {
    j["k_kt"] = to_json(r.k_kt);
    j["k_hom"] = to_json(r.k_hom);
    if (r.extraction) j["extraction"] = to_json(*r.extraction);
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (r.cover) j["cover"] = to_json(*r.cover);
    j["cover_verified"] = r.cover_verified;
  }
  return j;
}

Json to_json(const CyclicExperimentResult& r) {
  Json j{{"kind", "cyclic_experiment"},
         {"p", r.p},
         {"k", r.kpow},
         {"branch", r.branch},
         {"a1_size", r.a1_size}};
  if (r.branch == 1) {
    if (r.cover) j["cover"] = to_json(*r.cover);
    j["cover_verified"] = r.cover_verified;
  } else {
    j["density"] = to_json(r.density);
    j["k_kt"] = to_json(r.k_kt);
    j["k_hom"] = to_json(r.k_hom);
    if (r.extraction) j["extraction"] = to_json(*r.extraction);
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
  }
  return j;
}

Json to_json(const AlgebraExperimentResult& r) {
  Json j{{"kind", "algebra_experiment"}, {"branch", r.branch}, {"route", r.route}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.extraction) {
    j["k_kt"] = to_json(r.k_kt);
    j["extraction"] = to_json(*r.extraction);
  }
  if (r.general) j["general"] = to_json(*r.general);
  return j;
}

Json to_json(const M2AnnihilatorResult& r) {
  Json spaces = Json::array();
  for (const auto& w : r.spaces) spaces.push_back(to_json(w));
  return Json{{"kind", "m2_annihilators"},
              {"spaces", std::move(spaces)},
              {"searcher_max_dim", r.searcher_max_dim},
              {"searcher_dim2_count", r.searcher_dim2_count},
              {"cross_check_ok", r.cross_check_ok}};
}

std::string dump_report(Json j) {
  j["schema"] = 1;
  return j.dump(2) + "\n";
}

}  // namespace sumprod
