// Command line front end: simulate / experiment / bounds / demo feller.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabsim/bounds.hpp"
#include "stabsim/config.hpp"
#include "stabsim/estimators.hpp"
#include "stabsim/feller.hpp"
#include "stabsim/mc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stabsim;

namespace {

struct CliError : std::runtime_error {
  std::string field;
  CliError(const std::string& msg, std::string f = "") : std::runtime_error(msg), field(std::move(f)) {}
};

struct Global {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool clamp = false;
};

void add_global_flags(CLI::App* app, Global& g) {
  app->add_option("--config", g.config_path, "JSON experiment configuration file");
  app->add_option("--out", g.out_dir, "output directory for CSV/JSON artifacts");
  app->add_option("--seed", g.seed, "master seed (overrides the config)");
  app->add_option("--threads", g.threads, "worker thread count (overrides the config)");
  app->add_flag("--clamp", g.clamp, "clamp analytic bounds to [0,1]");
}

json load_config(const Global& g) {
  if (g.config_path.empty()) throw CliError("missing --config", "config");
  std::ifstream in(g.config_path);
  if (!in) throw CliError("cannot open config file '" + g.config_path + "'", "config");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CliError(std::string("config parse error: ") + e.what(), "config");
  }
}

ExperimentSpec spec_from_json(const json& j, const Global& g, bool& want_survival) {
  if (!j.is_object()) throw CliError("config must be a JSON object", "config");
  static const std::vector<std::string> known = {
      "score", "k",      "range",   "alphas",  "lambda",      "replicates", "d",
      "seed",  "threads", "trim_r", "slab_r",  "theta",       "survival",
      "keep_samples", "compute_radii"};
  std::string bad;
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      bad += (bad.empty() ? "" : ", ") + key;
  if (!bad.empty()) throw CliError("unknown config keys: " + bad, bad);
  if (!j.contains("score")) throw CliError("required field missing: score", "score");

  ExperimentSpec spec;
  try {
    spec.score_id = j.at("score").get<std::string>();
    if (j.contains("k")) spec.params.k = j.at("k").get<int>();
    if (j.contains("range")) spec.params.range = j.at("range").get<double>();
    if (j.contains("alphas")) spec.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
    if (j.contains("replicates")) spec.replicates = j.at("replicates").get<int>();
    if (j.contains("d")) spec.d = j.at("d").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trim_r")) spec.trim_r = j.at("trim_r").get<double>();
    if (j.contains("slab_r")) spec.slab_r = j.at("slab_r").get<double>();
    if (j.contains("theta")) spec.theta = j.at("theta").get<double>();
    if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
    if (j.contains("keep_samples")) spec.keep_samples = j.at("keep_samples").get<bool>();
    if (j.contains("compute_radii")) spec.compute_radii = j.at("compute_radii").get<bool>();
    want_survival = j.value("survival", false);
  } catch (const json::exception& e) {
    throw CliError(std::string("config field error: ") + e.what(), "config");
  }
  if (g.seed) spec.seed = *g.seed;
  if (g.threads) spec.threads = *g.threads;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what(), "config");
  }
  return spec;
}

std::ofstream open_out(const Global& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  const fs::path p = fs::path(g.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw CliError("cannot write " + p.string(), "out");
  return out;
}

int cmd_simulate(const Global& g) {
  bool survival = false;
  const ExperimentSpec spec = spec_from_json(load_config(g), g, survival);
  const ExperimentResult res = run_experiment(spec);
  auto out = open_out(g, "samples.csv");
  write_samples_csv(out, spec, res);
  return 0;
}

int cmd_experiment(const Global& g) {
  bool survival = false;
  const ExperimentSpec spec = spec_from_json(load_config(g), g, survival);
  const ExperimentResult res = run_experiment(spec);

  {
    auto out = open_out(g, "experiment.csv");
    write_experiment_csv(out, res);
  }
  if (spec.keep_samples) {
    auto out = open_out(g, "samples.csv");
    write_samples_csv(out, spec, res);
  }
  if (survival) {
    std::vector<double> grid;
    for (int t = 1; t <= 30; ++t) grid.push_back(t);
    auto out = open_out(g, "survival.csv");
    write_survival_csv(out, radius_tail_empirical(spec, grid));
  }
  json summary;
  summary["score"] = spec.score_id;
  summary["seed"] = spec.seed;
  summary["variance_slope"] = res.slope;
  summary["variance_slope_stderr"] = res.slope_se;
  json rows = json::array();
  for (const auto& ar : res.per_alpha)
    rows.push_back({{"alpha", ar.alpha},
                    {"n_reps", ar.n_reps},
                    {"mean", ar.mean},
                    {"var", ar.var},
                    {"d_K", ar.d_k},
                    {"tv_binned_proxy", ar.tv_binned},
                    {"trim_frac", ar.trim_frac}});
  summary["per_alpha"] = rows;
  auto out = open_out(g, "summary.json");
  out << summary.dump(2) << '\n';
  return 0;
}

struct BoundArgs {
  std::string name;
  double mu1 = 0, mu2 = 0, s1 = 1, s2 = 1;
  double a = 1, gamma = 0;
  int n = 1, k = 1, d = 2;
  double lambda = 1, t = 0, alpha = 1, r = 1, beta = 0;
  std::string regime = "range-bound";
};

void emit_row(std::ostream& os, const std::string& name, const std::string& params,
              double value) {
  os << name << ',' << params << ',' << format_double(value) << '\n';
}

int cmd_bounds(const Global& g, const BoundArgs& b) {
  std::ostringstream body;
  body << "name,params,value\n";
  auto fmt = [](std::initializer_list<std::pair<const char*, double>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
      if (!s.empty()) s += ';';
      s += std::string(k) + "=" + format_double(v);
    }
    return s;
  };
  if (b.name == "normal_tv") {
    const std::string p = fmt({{"mu1", b.mu1}, {"s1", b.s1}, {"mu2", b.mu2}, {"s2", b.s2}});
    emit_row(body, "normal_tv_exact", p, normal_tv_exact(b.mu1, b.s1, b.mu2, b.s2));
    emit_row(body, "normal_tv_bound", p, normal_tv_bound(b.mu1, b.s1, b.mu2, b.s2));
  } else if (b.name == "tv_shift") {
    const std::string p = fmt({{"a", b.a}, {"n", double(b.n)}, {"gamma", b.gamma}});
    emit_row(body, "tv_shift_exact", p, tv_shift_exact_triangular(b.a, b.n, b.gamma));
    emit_row(body, "tv_shift_bound", p, tv_shift_bound_triangular(b.a, b.n, b.gamma));
  } else if (b.name == "knn_tail") {
    const std::string p = fmt({{"lambda", b.lambda}, {"k", double(b.k)}, {"t", b.t}});
    emit_row(body, "knn_tail", p, knn_radius_tail_bound(b.lambda, b.k, b.t, g.clamp));
  } else if (b.name == "voronoi_tail") {
    const std::string p = fmt({{"lambda", b.lambda}, {"t", b.t}});
    emit_row(body, "voronoi_tail", p, voronoi_radius_tail_bound(b.lambda, b.t, g.clamp));
  } else if (b.name == "trimming_knn") {
    const std::string p =
        fmt({{"alpha", b.alpha}, {"lambda", b.lambda}, {"k", double(b.k)}, {"r", b.r}});
    auto tail = [&](double t) { return knn_radius_tail_bound(b.lambda, b.k, t, true); };
    emit_row(body, "trimming_knn", p, trimming_bound(b.alpha, b.lambda, tail, b.r, g.clamp));
  } else if (b.name == "rate" || b.name == "variance_exponent") {
    RateParams rp;
    rp.d = b.d;
    rp.k = b.k;
    rp.beta = b.beta;
    if (b.regime == "range-bound")
      rp.regime = Regime::RangeBound;
    else if (b.regime == "exponential")
      rp.regime = Regime::Exponential;
    else if (b.regime == "polynomial")
      rp.regime = Regime::Polynomial;
    else
      throw CliError("unknown regime '" + b.regime + "'", "regime");
    const std::string p = fmt(
        {{"alpha", b.alpha}, {"d", double(b.d)}, {"k", double(b.k)}, {"beta", b.beta}});
    try {
      if (b.name == "rate")
        emit_row(body, "rate", p + ";regime=" + b.regime, theorem_rate(b.alpha, rp));
      else
        emit_row(body, "variance_exponent", p + ";regime=" + b.regime, variance_exponent(rp));
    } catch (const std::invalid_argument& e) {
      throw CliError(e.what(), "beta");
    }
  } else {
    throw CliError("unknown bound name '" + b.name + "'", "name");
  }
  if (g.out_dir != ".") {
    auto out = open_out(g, "bounds.csv");
    out << body.str();
  } else {
    std::cout << body.str();
  }
  return 0;
}

struct FellerArgs {
  std::vector<long> n = {10, 100, 1000, 10000};
  int depth = 53;
  int reps = 5000;
  std::uint64_t seed = 0;
};

int cmd_feller(const Global& g, const FellerArgs& f) {
  auto out = open_out(g, "feller.csv");
  out << "n,rep,S\n";
  const std::uint64_t seed = g.seed.value_or(f.seed);
  for (long n : f.n) {
    const auto s = feller_partial_sums(n, f.depth, f.reps, seed);
    for (std::size_t r = 0; r < s.size(); ++r)
      out << n << ',' << r << ',' << format_double(s[r]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial score-sum simulation laboratory"};
  app.require_subcommand(1);

  Global g_sim, g_exp, g_bounds, g_demo;
  BoundArgs bargs;
  FellerArgs fargs;

  auto* sim = app.add_subcommand("simulate", "draw one ensemble and write raw samples");
  add_global_flags(sim, g_sim);

  auto* exp = app.add_subcommand("experiment", "alpha sweep with estimators and summary");
  add_global_flags(exp, g_exp);

  auto* bnd = app.add_subcommand("bounds", "evaluate analytic bounds, CSV name,params,value");
  add_global_flags(bnd, g_bounds);
  bnd->add_option("--name", bargs.name,
                  "normal_tv|tv_shift|knn_tail|voronoi_tail|trimming_knn|rate|variance_exponent")
      ->required();
  bnd->add_option("--mu1", bargs.mu1, "first normal mean");
  bnd->add_option("--mu2", bargs.mu2, "second normal mean");
  bnd->add_option("--s1", bargs.s1, "first normal standard deviation");
  bnd->add_option("--s2", bargs.s2, "second normal standard deviation");
  bnd->add_option("--a", bargs.a, "triangular half-width");
  bnd->add_option("--n", bargs.n, "convolution order");
  bnd->add_option("--gamma", bargs.gamma, "shift");
  bnd->add_option("--lambda", bargs.lambda, "intensity");
  bnd->add_option("--k", bargs.k, "neighbor / moment order");
  bnd->add_option("--t", bargs.t, "tail abscissa");
  bnd->add_option("--alpha", bargs.alpha, "window volume");
  bnd->add_option("--r", bargs.r, "trimming radius");
  bnd->add_option("--beta", bargs.beta, "polynomial stabilization order");
  bnd->add_option("--d", bargs.d, "dimension");
  bnd->add_option("--regime", bargs.regime, "range-bound|exponential|polynomial");

  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  auto* feller = demo->add_subcommand("feller", "1-dependent bounded-variance partial sums");
  add_global_flags(feller, g_demo);
  feller->add_option("--n", fargs.n, "partial sum lengths");
  feller->add_option("--depth", fargs.depth, "dyadic digits per block");
  feller->add_option("--reps", fargs.reps, "sample count per n");
  demo->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(g_sim);
    if (exp->parsed()) return cmd_experiment(g_exp);
    if (bnd->parsed()) return cmd_bounds(g_bounds, bargs);
    if (demo->parsed() && feller->parsed()) return cmd_feller(g_demo, fargs);
  } catch (const CliError& e) {
    json err = {{"error", e.what()}, {"field", e.field}};
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}, {"field", ""}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 1;
}
