#include "stabsim/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "stabsim/bounds.hpp"
#include "stabsim/estimators.hpp"
#include "stabsim/poisson.hpp"
#include "stabsim/rng.hpp"

namespace stabsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

MarkSampler mark_sampler_for(const std::string& score_id) {
  if (score_id == "timber") return MarkSampler::normal(0.0, 1.0);
  return MarkSampler::none();
}

MarkedConfiguration sample_replicate(const ExperimentSpec& spec, double alpha,
                                     std::uint64_t rep_seed) {
  const MarkSampler marks = mark_sampler_for(spec.score_id);
  if (spec.score_id == "maxlayer") {
    const std::vector<double> angles(spec.d - 1, spec.theta);
    return sample_slab(spec.d, alpha, spec.slab_r, angles, spec.lambda, marks, rep_seed);
  }
  return sample_poisson(Window::cube(spec.d, alpha), spec.lambda, marks, rep_seed);
}

// Run fn(rep) for rep in [0, n) across the requested worker count. Results
// must be written to preallocated slots keyed by rep so aggregation order is
// independent of scheduling.
template <typename Fn>
void parallel_reps(int n, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int r = 0; r < n; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= n) return;
        fn(r);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

void ExperimentSpec::validate() const {
  if (alphas.empty()) throw std::invalid_argument("experiment: alphas must be nonempty");
  if (!std::is_sorted(alphas.begin(), alphas.end()) ||
      std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end())
    throw std::invalid_argument("experiment: alphas must be strictly increasing");
  for (double a : alphas)
    if (a <= 0) throw std::invalid_argument("experiment: alphas must be positive");
  if (replicates < 2) throw std::invalid_argument("experiment: need at least 2 replicates");
  if (lambda <= 0) throw std::invalid_argument("experiment: lambda must be positive");
  if (d < 1) throw std::invalid_argument("experiment: d must be at least 1");
  if ((score_id == "voronoi" || score_id == "knn" || score_id == "knn-directed") && d != 2)
    throw std::invalid_argument("experiment: score '" + score_id + "' requires d=2");
  if (score_id == "maxlayer" && d < 2)
    throw std::invalid_argument("experiment: maxlayer requires d>=2");
  if (score_id == "maxlayer") {
    if (slab_r <= 0) throw std::invalid_argument("experiment: slab_r must be positive");
    if (theta <= 0 || theta >= std::acos(-1.0) / 2)
      throw std::invalid_argument("experiment: theta must lie in (0, pi/2)");
  }
  if (threads < 1) throw std::invalid_argument("experiment: threads must be positive");
  if (trim_r < 0) throw std::invalid_argument("experiment: trim_r must be nonnegative");
  make_score(score_id, params);  // validates the id and parameters
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto score = make_score(spec.score_id, spec.params);
  ExperimentResult res;
  res.per_alpha.resize(spec.alphas.size());

  for (std::size_t ai = 0; ai < spec.alphas.size(); ++ai) {
    const double alpha = spec.alphas[ai];
    std::vector<double> w(spec.replicates, 0.0);
    std::vector<long> pts(spec.replicates, 0), trimmed(spec.replicates, 0);

    parallel_reps(spec.replicates, spec.threads, [&](int rep) {
      const std::uint64_t rs = Rng::derive(spec.seed, ai, static_cast<std::uint64_t>(rep));
      const MarkedConfiguration cfg = sample_replicate(spec, alpha, rs);
      const auto s = score->evaluate_all(cfg);
      double sum = 0;
      for (double v : s) sum += v;
      w[rep] = sum;
      pts[rep] = static_cast<long>(cfg.size());
      if (spec.compute_radii && !cfg.empty()) {
        long over = 0;
        for (const auto& sr : score->stab_radii(cfg))
          if (sr.radius > spec.trim_r) ++over;
        trimmed[rep] = over;
      }
    });

    AlphaResult& ar = res.per_alpha[ai];
    ar.alpha = alpha;
    ar.n_reps = spec.replicates;
    double mean = 0;
    for (double v : w) mean += v;
    mean /= spec.replicates;
    double var = 0;
    for (double v : w) var += (v - mean) * (v - mean);
    var /= (spec.replicates - 1);
    ar.mean = mean;
    ar.var = var;
    const double sd = std::sqrt(var);
    ar.d_k = sd > 0 ? kolmogorov_distance(w, mean, sd) : 1.0;
    ar.tv_binned = (spec.replicates >= 30 && sd > 0) ? binned_tv_estimate(w, mean, sd) : kNan;
    long tot = 0, over = 0;
    for (int r = 0; r < spec.replicates; ++r) {
      tot += pts[r];
      over += trimmed[r];
    }
    ar.trim_frac = (spec.compute_radii && tot > 0)
                       ? static_cast<double>(over) / static_cast<double>(tot)
                       : kNan;
    if (spec.keep_samples) ar.samples = std::move(w);
  }

  if (spec.alphas.size() >= 3) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& ar : res.per_alpha)
      if (ar.var > 0) pairs.emplace_back(ar.alpha, ar.var);
    if (pairs.size() >= 3) {
      const auto [slope, se] = loglog_slope(pairs);
      res.slope = slope;
      res.slope_se = se;
    } else {
      res.slope = res.slope_se = kNan;
    }
  } else {
    res.slope = res.slope_se = kNan;
  }
  return res;
}

SurvivalCurve radius_tail_empirical(const ExperimentSpec& spec,
                                    const std::vector<double>& t_grid) {
  spec.validate();
  const auto score = make_score(spec.score_id, spec.params);
  const double alpha = spec.alphas.back();
  const std::size_t ai = spec.alphas.size() - 1;

  std::vector<std::vector<long>> over(spec.replicates,
                                      std::vector<long>(t_grid.size(), 0));
  std::vector<long> pts(spec.replicates, 0);
  parallel_reps(spec.replicates, spec.threads, [&](int rep) {
    const std::uint64_t rs = Rng::derive(spec.seed, ai, static_cast<std::uint64_t>(rep));
    const MarkedConfiguration cfg = sample_replicate(spec, alpha, rs);
    pts[rep] = static_cast<long>(cfg.size());
    if (cfg.empty()) return;
    for (const auto& sr : score->stab_radii(cfg))
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti)
        if (sr.radius > t_grid[ti]) ++over[rep][ti];
  });

  long total = 0;
  for (long p : pts) total += p;
  SurvivalCurve c;
  c.t = t_grid;
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    long o = 0;
    for (int r = 0; r < spec.replicates; ++r) o += over[r][ti];
    const double s = total > 0 ? static_cast<double>(o) / total : kNan;
    c.survival.push_back(s);
    c.se.push_back(total > 0 ? std::sqrt(std::max(s * (1 - s), 0.0) / total) : kNan);
    double b = kNan;
    if (spec.score_id == "knn" || spec.score_id == "knn-directed")
      b = knn_radius_tail_bound(spec.lambda, spec.params.k, t_grid[ti]);
    else if (spec.score_id == "voronoi")
      b = voronoi_radius_tail_bound(spec.lambda, t_grid[ti]);
    else if (score->regime() == ScoreFunction::Regime::RangeBound &&
             score->regime_param() > 0)
      b = t_grid[ti] >= score->regime_param() ? 0.0 : 1.0;
    c.bound.push_back(b);
  }
  return c;
}

void write_samples_csv(std::ostream& os, const ExperimentSpec& spec,
                       const ExperimentResult& res) {
  os << "alpha,rep,W\n";
  for (const auto& ar : res.per_alpha)
    for (std::size_t r = 0; r < ar.samples.size(); ++r)
      os << format_double(ar.alpha) << ',' << r << ',' << format_double(ar.samples[r])
         << '\n';
  (void)spec;
}

void write_experiment_csv(std::ostream& os, const ExperimentResult& res) {
  os << "alpha,n_reps,mean,var,d_K,tv_binned_proxy,trim_frac\n";
  for (const auto& ar : res.per_alpha)
    os << format_double(ar.alpha) << ',' << ar.n_reps << ',' << format_double(ar.mean)
       << ',' << format_double(ar.var) << ',' << format_double(ar.d_k) << ','
       << format_double(ar.tv_binned) << ',' << format_double(ar.trim_frac) << '\n';
}

void write_survival_csv(std::ostream& os, const SurvivalCurve& c) {
  os << "t,survival,stderr,bound\n";
  for (std::size_t i = 0; i < c.t.size(); ++i)
    os << format_double(c.t[i]) << ',' << format_double(c.survival[i]) << ','
       << format_double(c.se[i]) << ',' << format_double(c.bound[i]) << '\n';
}

}  // namespace stabsim
