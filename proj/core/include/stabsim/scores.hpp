#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stabsim/config.hpp"

namespace stabsim {

// Radius certifying that changes to the configuration outside
// B(point, radius) within the window cannot alter the point's score. When the
// ball covers the whole window the radius reports the fixed sentinel
// 2*diameter and the flag is set.
struct StabRadiusSample {
  std::size_t point;
  double radius;
  bool window_covering;
};

// A translation invariant score of a point within a marked configuration,
// together with its stabilization radius construction and decay regime.
class ScoreFunction {
 public:
  enum class Regime { RangeBound, Exponential, Polynomial };

  virtual ~ScoreFunction() = default;
  virtual std::string id() const = 0;
  virtual Regime regime() const = 0;
  virtual double regime_param() const { return 0.0; }  // range or beta

  // Scores / radii of every configuration point, canonical order.
  virtual std::vector<double> evaluate_all(const MarkedConfiguration& cfg) const = 0;
  virtual std::vector<StabRadiusSample> stab_radii(const MarkedConfiguration& cfg) const = 0;

  double evaluate(std::size_t i, const MarkedConfiguration& cfg) const;
  StabRadiusSample stab_radius(std::size_t i, const MarkedConfiguration& cfg) const;
};

struct ScoreParams {
  int k = 1;           // neighbor count (knn), layer index (maxlayer)
  double range = 1.0;  // interaction radius of the timber base score
  bool directed = false;
};

// ids: knn, knn-directed, voronoi, timber, maxlayer.
std::unique_ptr<ScoreFunction> make_score(const std::string& id, const ScoreParams& p = {});

// Point-query forms. The query position must belong to the configuration
// (within the geometric tolerance); otherwise a domain error is thrown.
double knn_score(std::span<const double> x, const MarkedConfiguration& cfg, int k);
StabRadiusSample knn_stab_radius(std::size_t i, const MarkedConfiguration& cfg, int k);
double voronoi_score(std::span<const double> x, const MarkedConfiguration& cfg);
StabRadiusSample voronoi_stab_radius(std::size_t i, const MarkedConfiguration& cfg);
double timber_score(std::size_t i, const MarkedConfiguration& cfg, double range);

double sum_scores(const MarkedConfiguration& cfg, const ScoreFunction& score);
double trimmed_sum(const MarkedConfiguration& cfg, const ScoreFunction& score, double r);

}  // namespace stabsim
