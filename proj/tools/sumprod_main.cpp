// sumprod: finite-ring sum-product laboratory CLI.
// Subcommands: ring-check, setop, growth, ruzsa, extract, sr, sr-verify,
// structure, freiman, experiment, sweep, export.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sumprod/json_io.hpp"

using namespace sumprod;

namespace {

struct Output {
  std::string path;  // empty = stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Errc::ConfigParse, "cannot open output file: " + path);
    out << text;
  }
};

RingHandle load_ring(const std::string& arg) { return build_ring(parse_ring_arg(arg)); }

std::uint32_t parse_index(const std::string& text, const char* what) {
  try {
    return static_cast<std::uint32_t>(std::stoul(text));
  } catch (const std::exception&) {
    fail(Errc::ConfigParse, std::string("bad ") + what + ": " + text);
  }
}

RSet load_set(const RingHandle& ring, const std::string& literal, const std::string& file) {
  require(literal.empty() != file.empty(), Errc::ConfigParse,
          "provide exactly one of --set and --set-file");
  if (!literal.empty()) return parse_set_literal(ring, literal);
  std::ifstream in(file);
  require(in.good(), Errc::ConfigParse, "cannot open set file: " + file);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return parse_set_literal(ring, line);
  }
  fail(Errc::ConfigParse, "set file has no literal: " + file);
}

SrConfig make_cfg(unsigned c0, std::int64_t tau) {
  SrConfig cfg;
  cfg.c0 = c0;
  if (tau >= 0) cfg.threshold_override = static_cast<std::uint64_t>(tau);
  return cfg;
}

ZdPolicy make_zd(const std::string& text) {
  if (text.empty()) return ZdPolicy{};
  return ZdPolicy::explicit_threshold(Rational::parse(text));
}

std::uint32_t thread_count() {
  if (const char* env = std::getenv("SUMPROD_THREADS")) {
    int n = std::atoi(env);
    require(n >= 1 && n <= 512, Errc::ConfigParse, "SUMPROD_THREADS out of range");
    return static_cast<std::uint32_t>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// --- sweep harness ----------------------------------------------------------

struct GenSpec {
  enum class Kind { Random, Progression, Subring } kind = Kind::Random;
  std::uint32_t n = 8;                         // random
  std::uint32_t start = 0, step = 1, len = 8;  // progression
  Rational fraction{1, 2};                     // subring sample
  std::string text;

  static GenSpec parse(const std::string& s) {
    GenSpec g;
    g.text = s;
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ':')) parts.push_back(cur);
    require(!parts.empty(), Errc::ConfigParse, "empty generator");
    try {
      if (parts[0] == "random") {
        require(parts.size() == 2, Errc::ConfigParse, "generator form: random:<n>");
        g.kind = Kind::Random;
        g.n = static_cast<std::uint32_t>(std::stoul(parts[1]));
      } else if (parts[0] == "progression") {
        require(parts.size() == 4, Errc::ConfigParse,
                "generator form: progression:<start>:<step>:<len>");
        g.kind = Kind::Progression;
        g.start = static_cast<std::uint32_t>(std::stoul(parts[1]));
        g.step = static_cast<std::uint32_t>(std::stoul(parts[2]));
        g.len = static_cast<std::uint32_t>(std::stoul(parts[3]));
      } else if (parts[0] == "subring") {
        require(parts.size() == 2, Errc::ConfigParse, "generator form: subring:<fraction>");
        g.kind = Kind::Subring;
        g.fraction = Rational::parse(parts[1]);
      } else {
        fail(Errc::ConfigParse, "unknown generator: " + parts[0]);
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::ConfigParse, "bad generator: " + s);
    }
    return g;
  }

  RSet generate(const RingHandle& ring, std::uint64_t seed) const {
    SplitMix64 rng(seed);
    switch (kind) {
      case Kind::Random: {
        std::uint32_t want = std::min<std::uint32_t>(n, ring->size());
        RSet s(ring);
        while (s.card() < want) s.insert(rng.below(ring->size()));
        return s;
      }
      case Kind::Progression: {
        RSet s(ring);
        std::uint32_t x = start % ring->size();
        for (std::uint32_t i = 0; i < len; ++i) {
          s.insert(x);
          x = ring->add(x, step % ring->size());
        }
        return s;
      }
      case Kind::Subring: {
        RSet closure = subring_closure(RSet::singleton(ring, rng.below(ring->size())));
        RSet s(ring);
        closure.bits().for_each([&](std::uint32_t x) {
          std::int64_t draw = static_cast<std::int64_t>(rng.next() % 1000000);
          if (draw * fraction.den < fraction.num * 1000000) s.insert(x);
        });
        if (s.empty()) s.insert(closure.min_element());
        return s;
      }
    }
    return RSet(ring);
  }
};

struct SweepRow {
  std::string instance_id;
  std::string ring_desc;
  GrowthReport growth;
  std::string outcome;
  Rational ratio;
  double wall_ms = 0.0;
};

// Experiment certificates certify the extracted subset A' (the original A is
// reached through the covering step), so validation targets A' when present.
bool validate_experiment_cert(const RSet& a, const std::optional<ExtractionOutcome>& ex,
                              const StructureCertificate& cert) {
  if (cert.is_dilated() && ex && !ex->is_zd_rich())
    return validate_certificate(ex->good().a_prime, cert);
  return validate_certificate(a, cert);
}

Rational cert_ratio(const StructureCertificate& c, const RSet& a) {
  if (c.is_zd_rich()) return std::get<ZeroDivisorRich>(c.variant).ratio;
  if (c.is_subring()) return std::get<SubringCert>(c.variant).ratio;
  if (c.is_dilated()) return std::get<DilatedSubringCert>(c.variant).ratio;
  return Rational::ratio(a.ring()->size(), a.card());
}

struct SweepConfig {
  std::string recipe;
  std::vector<std::string> ring_tokens;
  GenSpec gen;
  std::uint64_t seed = 0;
  std::uint32_t reps = 1;
  std::uint32_t n_max = 6;
  bool timings = false;
};

void validate_recipe_ring(const std::string& recipe, const FiniteRing& ring) {
  if (recipe == "division") {
    require(is_finite_field(ring), Errc::ConfigParse,
            "recipe division needs a division ring, got " + ring.descriptor());
  } else if (recipe == "product") {
    require(ring.kind() == RingKind::Product, Errc::ConfigParse,
            "recipe product needs a product ring, got " + ring.descriptor());
  } else if (recipe == "cyclic") {
    require(ring.kind() == RingKind::Cyclic && prime_power(ring.cyclic_modulus()).has_value(),
            Errc::ConfigParse, "recipe cyclic needs Z/p^k, got " + ring.descriptor());
  } else {
    require(recipe == "inhom" || recipe == "freiman", Errc::ConfigParse,
            "unknown recipe: " + recipe);
  }
}

SweepRow run_instance(const SweepConfig& cfg, const RingHandle& ring, const std::string& token,
                      std::uint32_t rep) {
  std::uint64_t seed =
      cfg.seed ^ fnv1a64(token.data(), token.size()) ^ (0x9e3779b97f4a7c15ull * (rep + 1));
  SweepRow row;
  row.instance_id = cfg.recipe + ":" + token + ":" + cfg.gen.text + ":" +
                    std::to_string(cfg.seed) + ":" + std::to_string(rep);
  row.ring_desc = ring->descriptor();
  RSet a = cfg.gen.generate(ring, seed);
  auto t0 = std::chrono::steady_clock::now();
  row.growth = growth_report(a);
  if (cfg.recipe == "inhom") {
    StructureCertificate c = inhomogeneous_structure(a, row.growth.k_inhom, SrConfig{});
    require(validate_certificate(a, c), Errc::InternalCheckFailed, "certificate invalid");
    row.outcome = c.variant_name();
    row.ratio = cert_ratio(c, a);
  } else if (cfg.recipe == "freiman") {
    GeneralOutcome out = homogeneous_structure_general(a, row.growth.k_hom, cfg.n_max);
    row.outcome = out.is_model() ? "FreimanModel" : out.cert().variant_name();
    row.ratio = out.ratio;
  } else {
    Rational k = rat_max(row.growth.ratio_sum, row.growth.ratio_prod);
    k = rat_max(k, Rational::integer(1));
    if (cfg.recipe == "division") {
      DivisionExperimentResult r = division_ring_experiment(a, k);
      require(validate_experiment_cert(a, r.extraction, r.certificate),
              Errc::InternalCheckFailed, "certificate invalid");
      row.outcome = r.certificate.variant_name();
      row.ratio = cert_ratio(r.certificate, a);
    } else if (cfg.recipe == "product") {
      ProductExperimentResult r = product_ring_experiment(a, k);
      if (r.branch == 1) {
        row.outcome = "ZeroDivisorRich";  // differences concentrate on a projection kernel
        row.ratio = Rational::ratio(r.a_j_sizes[*r.j], a.card());
      } else {
        require(validate_experiment_cert(a, r.extraction, *r.certificate),
                Errc::InternalCheckFailed, "certificate invalid");
        row.outcome = r.certificate->variant_name();
        row.ratio = cert_ratio(*r.certificate, a);
      }
    } else {  // cyclic
      CyclicExperimentResult r = cyclic_ring_experiment(a, k);
      if (r.branch == 1) {
        row.outcome = "ZeroDivisorRich";
        row.ratio = Rational::ratio(r.a1_size, a.card());
      } else {
        require(validate_certificate(a, *r.certificate), Errc::InternalCheckFailed,
                "certificate invalid");
        row.outcome = r.certificate->variant_name();
        row.ratio = cert_ratio(*r.certificate, a);
      }
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  require(!cfg.ring_tokens.empty() && cfg.reps >= 1, Errc::EmptySweep, "no instances");
  std::vector<RingHandle> rings;
  for (const auto& token : cfg.ring_tokens) {
    RingHandle r = build_ring(parse_ring_arg(token));
    validate_recipe_ring(cfg.recipe, *r);
    rings.push_back(std::move(r));
  }
  struct Task {
    std::size_t ring_idx;
    std::uint32_t rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < rings.size(); ++i)
    for (std::uint32_t rep = 0; rep < cfg.reps; ++rep) tasks.push_back({i, rep});

  // worker pool over an atomic task index; row order is by task index, so the
  // output is independent of scheduling
  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex err_mu;
  std::uint32_t workers =
      std::min<std::uint32_t>(thread_count(), static_cast<std::uint32_t>(tasks.size()));
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || failed.load()) break;
      try {
        rows[i] = run_instance(cfg, rings[tasks[i].ring_idx],
                               cfg.ring_tokens[tasks[i].ring_idx], tasks[i].rep);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::uint32_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failed.load())
    throw Error(Errc::HypothesisViolated, "sweep instance failed: " + first_error);
  return rows;
}

Json sweep_to_json(const std::vector<SweepRow>& rows, bool timings) {
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json j{{"instance_id", row.instance_id},
           {"ring", row.ring_desc},
           {"card_a", row.growth.card_a},
           {"size_sum", row.growth.size_sum},
           {"size_diff", row.growth.size_diff},
           {"size_prod", row.growth.size_prod},
           {"size_prod_diff", row.growth.size_prod_diff},
           {"size_sum_prod", row.growth.size_sum_prod},
           {"zd_in_diff", row.growth.zd_in_diff},
           {"k_inhom", row.growth.k_inhom.str()},
           {"k_hom", row.growth.k_hom.str()},
           {"outcome", row.outcome},
           {"ratio", row.ratio.str()}};
    if (timings) j["wall_ms"] = row.wall_ms;
    arr.push_back(std::move(j));
  }
  return Json{{"kind", "sweep"}, {"rows", std::move(arr)}};
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool timings) {
  std::string out =
      "instance_id,ring,card_A,size_sum,size_diff,size_prod,size_prod_diff,size_sum_prod,"
      "zd_in_diff,K_inhom,K_hom,outcome,ratio";
  if (timings) out += ",wall_ms";
  out += "\n";
  for (const auto& row : rows) {
    out += row.instance_id + "," + row.ring_desc + "," + std::to_string(row.growth.card_a) +
           "," + std::to_string(row.growth.size_sum) + "," +
           std::to_string(row.growth.size_diff) + "," + std::to_string(row.growth.size_prod) +
           "," + std::to_string(row.growth.size_prod_diff) + "," +
           std::to_string(row.growth.size_sum_prod) + "," +
           std::to_string(row.growth.zd_in_diff) + "," + row.growth.k_inhom.str() + "," +
           row.growth.k_hom.str() + "," + row.outcome + "," + row.ratio.str();
    if (timings) out += "," + std::to_string(row.wall_ms);
    out += "\n";
  }
  return out;
}

// export_plot_data: stable column order over a sweep JSON report
std::string export_plot_csv(const Json& sweep) {
  require(sweep.contains("rows") && sweep["rows"].is_array(), Errc::ConfigParse,
          "input is not a sweep report");
  const Json& rows = sweep["rows"];
  require(!rows.empty(), Errc::EmptySweep, "sweep has no rows");
  std::string out = "instance_id,ring,card_A,K_inhom,K_hom,outcome,ratio\n";
  for (const auto& row : rows) {
    out += row.at("instance_id").get<std::string>() + "," +
           row.at("ring").get<std::string>() + "," +
           std::to_string(row.at("card_a").get<std::uint64_t>()) + "," +
           row.at("k_inhom").get<std::string>() + "," + row.at("k_hom").get<std::string>() +
           "," + row.at("outcome").get<std::string>() + "," +
           row.at("ratio").get<std::string>() + "\n";
  }
  return out;
}

int classify_exit(const Error& e) {
  switch (e.code()) {
    case Errc::InternalCheckFailed:
    case Errc::SolveFailure:
      return 1;
    default:
      return 2;  // hypothesis violations and malformed inputs
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-ring sum-product laboratory"};
  app.require_subcommand(1);

  std::string ring_arg, set_arg, set_b_arg, set_c_arg, set_file, out_path;
  std::string k_arg = "1", zd_arg, scope_arg = "rstar", r_arg, side_arg = "left";
  std::string op_arg, mode_arg, recipe_arg, in_path;
  unsigned c0 = 4;
  std::int64_t tau = -1;
  std::uint32_t iter_n = 2, n_max = 6, dim_min = 1;
  std::int64_t a_idx = -1;
  unsigned n1 = 1, n2 = 1, n3 = 0, n4 = 0;
  std::uint32_t x_idx = 0;
  std::uint32_t axiom_limit = 4096;
  std::uint64_t samples = 1000000;
  std::uint64_t sample_seed = 0x5350415853ull;
  SweepConfig sweep_cfg;
  std::string rings_csv, gen_arg = "random:8", format = "json";

  auto add_ring = [&](CLI::App* cmd) {
    cmd->add_option("--ring", ring_arg, "ring spec: file path, inline kind=..., or token")
        ->required();
  };
  auto add_set = [&](CLI::App* cmd) {
    cmd->add_option("--set", set_arg, "set literal {i1,i2,...}");
    cmd->add_option("--set-file", set_file, "file with one set literal");
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "output file"); };

  CLI::App* ring_check = app.add_subcommand("ring-check", "validate ring axioms");
  add_ring(ring_check);
  add_out(ring_check);
  ring_check->add_option("--limit", axiom_limit, "exhaustive scan limit");
  ring_check->add_option("--samples", samples, "sampled triples above the limit");
  ring_check->add_option("--sample-seed", sample_seed, "seed for sampled mode");

  CLI::App* setop = app.add_subcommand("setop", "set arithmetic");
  add_ring(setop);
  add_set(setop);
  add_out(setop);
  setop
      ->add_option(
          "--op", op_arg,
          "sum|diff|prod|iter-sum|iter-prod|dilate|translate|negate|rep-sum|rep-prod|energy")
      ->required();
  setop->add_option("--set-b", set_b_arg, "second operand literal");
  setop->add_option("--n", iter_n, "iteration count");
  setop->add_option("--r", r_arg, "ring element index");
  setop->add_option("--side", side_arg, "left|right");
  setop->add_option("--x", x_idx, "target element for rep counts");

  CLI::App* growth = app.add_subcommand("growth", "growth report");
  add_ring(growth);
  add_set(growth);
  add_out(growth);

  CLI::App* ruzsa = app.add_subcommand("ruzsa", "covering / triangle / plunnecke");
  add_ring(ruzsa);
  add_set(ruzsa);
  add_out(ruzsa);
  ruzsa->add_option("--op", op_arg, "cover|triangle|plunnecke")->required();
  ruzsa->add_option("--set-b", set_b_arg, "B literal")->required();
  ruzsa->add_option("--set-c", set_c_arg, "C literal (triangle)");
  ruzsa->add_option("--mode", mode_arg, "plus|minus (cover)");
  ruzsa->add_option("--n1", n1);
  ruzsa->add_option("--n2", n2);
  ruzsa->add_option("--n3", n3);
  ruzsa->add_option("--n4", n4);

  CLI::App* extract = app.add_subcommand("extract", "Katz-Tao extraction");
  add_ring(extract);
  add_set(extract);
  add_out(extract);
  extract->add_option("--k", k_arg, "growth parameter K (rational)")->required();
  extract->add_option("--zd-threshold", zd_arg, "richness cutoff (default 1/(2K^4))");

  CLI::App* sr = app.add_subcommand("sr", "structured set S_r");
  add_ring(sr);
  add_set(sr);
  add_out(sr);
  sr->add_option("--k", k_arg)->required();
  sr->add_option("--r", r_arg, "element index or 'unit'")->required();
  sr->add_option("--c0", c0);
  sr->add_option("--tau", tau, "threshold override");

  CLI::App* sr_verify = app.add_subcommand("sr-verify", "verify S_r properties");
  add_ring(sr_verify);
  add_set(sr_verify);
  add_out(sr_verify);
  sr_verify->add_option("--k", k_arg)->required();
  sr_verify->add_option("--c0", c0);
  sr_verify->add_option("--tau", tau);
  sr_verify->add_option("--scope", scope_arg, "set literal or 'rstar' (default)");

  CLI::App* structure = app.add_subcommand("structure", "subring certificates");
  add_ring(structure);
  add_set(structure);
  add_out(structure);
  structure->add_option("--mode", mode_arg, "inhom|hom-unit")->required();
  structure->add_option("--k", k_arg)->required();
  structure->add_option("--a", a_idx, "invertible element (hom-unit)");
  structure->add_option("--c0", c0);
  structure->add_option("--tau", tau);
  structure->add_option("--zd-threshold", zd_arg);

  CLI::App* freiman = app.add_subcommand("freiman", "graded groups and Freiman model");
  add_ring(freiman);
  add_set(freiman);
  add_out(freiman);
  freiman->add_option("--k", k_arg)->required();
  freiman->add_option("--a", a_idx, "pivot override");
  freiman->add_option("--n-max", n_max);
  freiman->add_option("--zd-threshold", zd_arg);

  CLI::App* experiment = app.add_subcommand("experiment", "special-case recipes");
  add_ring(experiment);
  add_set(experiment);
  add_out(experiment);
  experiment->add_option("--recipe", recipe_arg, "division|product|cyclic|algebra")->required();
  experiment->add_option("--k", k_arg)->required();
  experiment->add_option("--c0", c0);
  experiment->add_option("--tau", tau);
  experiment->add_option("--threshold", zd_arg, "branch threshold (default 1/(2K^4))");
  experiment->add_option("--dim-min", dim_min);
  experiment->add_option("--n-max", n_max);

  CLI::App* sweep = app.add_subcommand("sweep", "batch over rings and seeds");
  add_out(sweep);
  sweep->add_option("--recipe", sweep_cfg.recipe, "inhom|freiman|division|product|cyclic")
      ->required();
  sweep->add_option("--rings", rings_csv, "comma-separated ring tokens")->required();
  sweep->add_option("--gen", gen_arg, "random:<n> | progression:<s>:<d>:<len> | subring:<frac>");
  sweep->add_option("--seed", sweep_cfg.seed);
  sweep->add_option("--reps", sweep_cfg.reps);
  sweep->add_option("--n-max", sweep_cfg.n_max);
  sweep->add_option("--format", format, "json|csv");
  sweep->add_flag("--timings", sweep_cfg.timings, "include wall_ms (breaks byte determinism)");

  CLI::App* exp = app.add_subcommand("export", "sweep JSON to plot CSV");
  exp->add_option("--in", in_path, "sweep JSON file")->required();
  add_out(exp);

  CLI11_PARSE(app, argc, argv);
  Output out{out_path};

  try {
    if (*ring_check) {
      RingHandle r = load_ring(ring_arg);
      AxiomCheckOptions opt;
      opt.exhaustive_limit = axiom_limit;
      opt.samples = samples;
      opt.seed = sample_seed;
      Json j = to_json(check_ring_axioms(*r, opt));
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*setop) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      auto need_b = [&] {
        require(!set_b_arg.empty(), Errc::ConfigParse, "--set-b required for " + op_arg);
        return parse_set_literal(r, set_b_arg);
      };
      Json j;
      if (op_arg == "sum") j = to_json(sumset(a, need_b()));
      else if (op_arg == "diff") j = to_json(difference_set(a, need_b()));
      else if (op_arg == "prod") j = to_json(product_set(a, need_b()));
      else if (op_arg == "iter-sum") j = to_json(iterated(a, iter_n, IterOp::Sum));
      else if (op_arg == "iter-prod") j = to_json(iterated(a, iter_n, IterOp::Product));
      else if (op_arg == "negate") j = to_json(negate_set(a));
      else if (op_arg == "dilate" || op_arg == "translate") {
        require(!r_arg.empty(), Errc::ConfigParse, "--r required");
        std::uint32_t elt = parse_index(r_arg, "--r");
        if (op_arg == "translate") j = to_json(translate(elt, a));
        else j = to_json(dilate(elt, a, side_arg == "right" ? Side::Right : Side::Left));
      } else if (op_arg == "rep-sum" || op_arg == "rep-prod") {
        j["count"] = representation_count(a, need_b(), x_idx,
                                          op_arg == "rep-sum" ? PairOp::Sum : PairOp::Product);
      } else if (op_arg == "energy") {
        j["energy"] = additive_energy(a, need_b());
      } else {
        fail(Errc::ConfigParse, "unknown setop: " + op_arg);
      }
      j["kind"] = "setop";
      j["op"] = op_arg;
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*growth) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      out.write(dump_report(to_json(growth_report(a), *r)));
      return 0;
    }
    if (*ruzsa) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      RSet b = parse_set_literal(r, set_b_arg);
      Json j;
      if (op_arg == "cover") {
        CoverWitness w =
            ruzsa_cover(a, b, mode_arg == "minus" ? CoverMode::Minus : CoverMode::Plus);
        require(validate_cover(a, b, w), Errc::InternalCheckFailed, "cover invalid");
        j = to_json(w);
      } else if (op_arg == "triangle") {
        require(!set_c_arg.empty(), Errc::ConfigParse, "--set-c required for triangle");
        j = to_json(triangle_check(a, b, parse_set_literal(r, set_c_arg)));
      } else if (op_arg == "plunnecke") {
        j = to_json(plunnecke_check(a, b, n1, n2, n3, n4));
      } else {
        fail(Errc::ConfigParse, "unknown ruzsa op: " + op_arg);
      }
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*extract) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      Rational k = Rational::parse(k_arg);
      ZdPolicy zd = make_zd(zd_arg);
      ExtractionOutcome o = katz_tao_extract(a, k, zd);
      require(validate_extraction(a, k, zd, o), Errc::InternalCheckFailed, "outcome invalid");
      Json j = to_json(o);
      j["ring"] = r->descriptor();
      j["k"] = k.str();
      out.write(dump_report(j));
      return 0;
    }
    if (*sr) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      SrTarget target = r_arg == "unit" ? SrTarget::formal_unit()
                                        : SrTarget::element(parse_index(r_arg, "--r"));
      Json j = to_json(compute_sr(a, Rational::parse(k_arg), target, make_cfg(c0, tau)));
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*sr_verify) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      Rational k = Rational::parse(k_arg);
      SrConfig cfg = make_cfg(c0, tau);
      std::vector<std::uint32_t> scope;
      if (scope_arg == "rstar") scope = classify_non_zero_divisors(*r);
      else scope = parse_set_literal(r, scope_arg).members();
      SrPropertyReport rep = verify_sr_properties(a, k, cfg, scope);
      require(validate_sr_report(a, k, cfg, rep), Errc::InternalCheckFailed,
              "witness replay failed");
      Json j = to_json(rep);
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*structure) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      Rational k = Rational::parse(k_arg);
      SrConfig cfg = make_cfg(c0, tau);
      ZdPolicy zd = make_zd(zd_arg);
      StructureCertificate cert;
      if (mode_arg == "inhom") {
        cert = inhomogeneous_structure(a, k, cfg, zd);
      } else if (mode_arg == "hom-unit") {
        require(a_idx >= 0, Errc::ConfigParse, "--a required for hom-unit");
        cert =
            homogeneous_structure_invertible(a, k, static_cast<std::uint32_t>(a_idx), cfg, zd);
      } else {
        fail(Errc::ConfigParse, "unknown mode: " + mode_arg);
      }
      require(validate_certificate(a, cert), Errc::InternalCheckFailed, "certificate invalid");
      Json j = to_json(cert);
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*freiman) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      std::optional<std::uint32_t> pivot;
      if (a_idx >= 0) pivot = static_cast<std::uint32_t>(a_idx);
      GeneralOutcome o = homogeneous_structure_general(a, Rational::parse(k_arg), n_max,
                                                       make_zd(zd_arg), pivot);
      Json j = to_json(o);
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*experiment) {
      RingHandle r = load_ring(ring_arg);
      RSet a = load_set(r, set_arg, set_file);
      Rational k = Rational::parse(k_arg);
      SrConfig cfg = make_cfg(c0, tau);
      Json j;
      if (recipe_arg == "division") {
        DivisionExperimentResult res = division_ring_experiment(a, k, cfg);
        require(validate_experiment_cert(a, res.extraction, res.certificate),
                Errc::InternalCheckFailed, "certificate invalid");
        j = to_json(res);
      } else if (recipe_arg == "product") {
        ProductExperimentResult res = product_ring_experiment(a, k, cfg, make_zd(zd_arg));
        if (res.certificate)
          require(validate_experiment_cert(a, res.extraction, *res.certificate),
                  Errc::InternalCheckFailed, "certificate invalid");
        j = to_json(res);
      } else if (recipe_arg == "cyclic") {
        CyclicExperimentResult res = cyclic_ring_experiment(a, k, cfg, make_zd(zd_arg));
        if (res.certificate)
          require(validate_experiment_cert(a, res.extraction, *res.certificate),
                  Errc::InternalCheckFailed, "certificate invalid");
        j = to_json(res);
      } else if (recipe_arg == "algebra") {
        // witnesses are validated inside the experiment before returning
        j = to_json(algebra_experiment(a, k, n_max, dim_min));
      } else {
        fail(Errc::ConfigParse, "unknown recipe: " + recipe_arg);
      }
      j["ring"] = r->descriptor();
      out.write(dump_report(j));
      return 0;
    }
    if (*sweep) {
      std::istringstream is(rings_csv);
      std::string token;
      while (std::getline(is, token, ',')) sweep_cfg.ring_tokens.push_back(token);
      sweep_cfg.gen = GenSpec::parse(gen_arg);
      std::vector<SweepRow> rows = run_sweep(sweep_cfg);
      if (format == "csv") out.write(sweep_to_csv(rows, sweep_cfg.timings));
      else out.write(dump_report(sweep_to_json(rows, sweep_cfg.timings)));
      return 0;
    }
    if (*exp) {
      std::ifstream in(in_path);
      require(in.good(), Errc::ConfigParse, "cannot open " + in_path);
      Json sweep_json = Json::parse(in, nullptr, true);
      out.write(export_plot_csv(sweep_json));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_exit(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
