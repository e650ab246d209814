#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stabsim/scores.hpp"

namespace stabsim {

// A replicated sampling experiment: for each window volume alpha, R
// independent configurations are drawn and the score sum W is recorded.
struct ExperimentSpec {
  std::string score_id = "knn";
  ScoreParams params;
  int d = 2;
  std::vector<double> alphas;
  double lambda = 1.0;
  int replicates = 200;
  std::uint64_t seed = 0;
  int threads = 1;
  double trim_r = 3.0;        // radius threshold for the trimming fraction
  double slab_r = 1.0;        // slab thickness (maxlayer only)
  double theta = 0.78539816339744830962;  // slab angle (maxlayer only)
  bool keep_samples = true;
  bool compute_radii = true;  // radii drive trim_frac; off saves time

  void validate() const;  // throws invalid_argument on constraint violations
};

struct AlphaResult {
  double alpha = 0;
  int n_reps = 0;
  double mean = 0, var = 0;
  double d_k = 0;             // Kolmogorov distance of standardized samples
  double tv_binned = 0;       // histogram TV proxy (NaN when R < 30)
  double trim_frac = 0;       // pooled fraction of points with radius > trim_r
  std::vector<double> samples;  // W per replicate, replicate order
};

struct ExperimentResult {
  std::vector<AlphaResult> per_alpha;
  double slope = 0, slope_se = 0;  // log-log variance fit (NaN if < 3 alphas)
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Pooled empirical survival P(R > t) of the stabilization radii over all
// points of all replicates at the largest alpha of the spec, with binomial
// standard errors and the analytic tail bound for comparable scores (NaN
// where no closed form applies).
struct SurvivalCurve {
  std::vector<double> t, survival, se, bound;
};
SurvivalCurve radius_tail_empirical(const ExperimentSpec& spec,
                                    const std::vector<double>& t_grid);

// One configuration ensemble: the replicate index, W value pairs at a single
// alpha (the spec's first), written as `alpha,rep,W`.
void write_samples_csv(std::ostream& os, const ExperimentSpec& spec,
                       const ExperimentResult& res);
// Per-alpha rows `alpha,n_reps,mean,var,d_K,tv_binned_proxy,trim_frac`.
void write_experiment_csv(std::ostream& os, const ExperimentResult& res);
// Rows `t,survival,stderr,bound`.
void write_survival_csv(std::ostream& os, const SurvivalCurve& c);

}  // namespace stabsim
