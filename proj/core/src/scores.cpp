#include "stabsim/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stabsim/graph.hpp"
#include "stabsim/grid_index.hpp"
#include "stabsim/maximal_layers.hpp"
#include "stabsim/voronoi.hpp"
#include "stabsim/window.hpp"

namespace stabsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Sector fan rotated so every sector edge meets the window edges at an angle
// of at least pi/12.
constexpr double kFanBase = kPi / 12;
constexpr int kSectors = 6;
constexpr double kSectorAngle = kPi / 3;

struct Poly2 {
  std::vector<std::array<double, 2>> v;
};

Poly2 square_window(const Window& w) {
  if (w.dim() != 2 || w.kind() != Window::Kind::Cube)
    throw std::invalid_argument("stab_radius: cube window with d=2 required");
  const double h = w.side() / 2;
  return {{{-h, -h}, {h, -h}, {h, h}, {-h, h}}};
}

// Keep the part of a convex polygon with n.z <= c.
Poly2 halfplane_clip(const Poly2& in, double nx, double ny, double c) {
  Poly2 out;
  const std::size_t m = in.v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = in.v[i];
    const auto& q = in.v[(i + 1) % m];
    const double sp = c - (nx * p[0] + ny * p[1]);
    const double sq = c - (nx * q[0] + ny * q[1]);
    if (sp >= 0) {
      out.v.push_back(p);
      if (sq < 0) {
        const double t = sp / (sp - sq);
        out.v.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    } else if (sq >= 0) {
      const double t = sp / (sp - sq);
      out.v.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

// Window region of sector j of the fan anchored at x.
Poly2 sector_window(const Poly2& win, double x, double y, int j) {
  const double a = kFanBase + j * kSectorAngle;
  const double b = a + kSectorAngle;
  Poly2 p = win;
  // Left of the ray at angle a: cross((cos a, sin a), z - x) >= 0.
  p = halfplane_clip(p, std::sin(a), -std::cos(a), std::sin(a) * x - std::cos(a) * y);
  // Right of the ray at angle b.
  p = halfplane_clip(p, -std::sin(b), std::cos(b), -std::sin(b) * x + std::cos(b) * y);
  return p;
}

int sector_of(double dx, double dy) {
  double phi = std::atan2(dy, dx) - kFanBase;
  phi -= 2 * kPi * std::floor(phi / (2 * kPi));
  int j = static_cast<int>(phi / kSectorAngle);
  return std::min(j, kSectors - 1);
}

double max_corner_dist(const Window& w, double x, double y) {
  const double h = w.side() / 2;
  double m = 0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) m = std::max(m, std::hypot(sx * h - x, sy * h - y));
  return m;
}

// Triangle entry time of a displacement (dx,dy) in sector j: the smallest t
// at which the equilateral triangle of height t anchored at x along the
// sector's bisector contains the point.
double triangle_time(double dx, double dy, int j) {
  const double b = kFanBase + (j + 0.5) * kSectorAngle;
  return dx * std::cos(b) + dy * std::sin(b);
}

StabRadiusSample knn_radius_impl(std::size_t i, const MarkedConfiguration& cfg,
                                 const GridIndex& grid, const Poly2& win, int k) {
  const Window& w = cfg.window();
  const double x = cfg.position(i)[0], y = cfg.position(i)[1];
  const std::size_t need = static_cast<std::size_t>(k) + 1;

  double exh[kSectors];
  for (int j = 0; j < kSectors; ++j) {
    const Poly2 p = sector_window(win, x, y, j);
    double m = 0;
    for (const auto& v : p.v) m = std::max(m, std::hypot(v[0] - x, v[1] - y));
    exh[j] = m;
  }

  std::vector<double> dists[kSectors];
  std::vector<std::size_t> cand;
  for (long r = 0;; ++r) {
    cand.clear();
    const bool more = grid.ring(cfg.position(i), r, cand);
    for (std::size_t c : cand) {
      if (c == i) continue;
      const double dx = cfg.position(c)[0] - x, dy = cfg.position(c)[1] - y;
      auto& v = dists[sector_of(dx, dy)];
      v.push_back(std::hypot(dx, dy));
      std::sort(v.begin(), v.end());
      if (v.size() > need) v.resize(need);
    }
    const double safe = static_cast<double>(r) * grid.cell();
    bool done = true;
    for (int j = 0; j < kSectors && done; ++j) {
      const bool by_points = dists[j].size() >= need && dists[j][need - 1] <= safe;
      const bool by_exh = exh[j] <= safe;
      done = by_points || by_exh;
    }
    if (done || !more) break;
  }

  double t = 0;
  for (int j = 0; j < kSectors; ++j) {
    double tj = exh[j];
    if (dists[j].size() >= need) tj = std::min(tj, dists[j][need - 1]);
    t = std::max(t, tj);
  }
  const double radius = 3 * t;
  if (radius >= max_corner_dist(w, x, y))
    return {i, 2 * w.diameter(), true};
  return {i, radius, false};
}

StabRadiusSample voronoi_radius_impl(std::size_t i, const MarkedConfiguration& cfg,
                                     const GridIndex& grid, const Poly2& win) {
  const Window& w = cfg.window();
  const double x = cfg.position(i)[0], y = cfg.position(i)[1];

  double exh[kSectors];
  for (int j = 0; j < kSectors; ++j) {
    const Poly2 p = sector_window(win, x, y, j);
    double m = 0;
    for (const auto& v : p.v) m = std::max(m, triangle_time(v[0] - x, v[1] - y, j));
    exh[j] = m;
  }

  double best[kSectors];
  for (int j = 0; j < kSectors; ++j) best[j] = exh[j];
  std::vector<std::size_t> cand;
  for (long r = 0;; ++r) {
    cand.clear();
    const bool more = grid.ring(cfg.position(i), r, cand);
    for (std::size_t c : cand) {
      if (c == i) continue;
      const double dx = cfg.position(c)[0] - x, dy = cfg.position(c)[1] - y;
      const int j = sector_of(dx, dy);
      best[j] = std::min(best[j], triangle_time(dx, dy, j));
    }
    // Any unseen point is farther than safe, and within its sector the
    // triangle time is at least cos(pi/6) times its distance, so once
    // every sector's current best drops below that threshold no later
    // candidate can improve.
    const double safe = 0.5 * std::sqrt(3.0) * static_cast<double>(r) * grid.cell();
    bool done = true;
    for (int j = 0; j < kSectors && done; ++j) done = best[j] <= safe;
    if (done || !more) break;
  }

  double t = 0;
  for (int j = 0; j < kSectors; ++j) t = std::max(t, best[j]);
  const double radius = 3 * t;
  if (radius >= max_corner_dist(w, x, y))
    return {i, 2 * w.diameter(), true};
  return {i, radius, false};
}

class KnnScore final : public ScoreFunction {
 public:
  KnnScore(int k, bool directed) : k_(k), directed_(directed) {
    if (k < 1) throw std::invalid_argument("knn score: k must be positive");
  }
  std::string id() const override { return directed_ ? "knn-directed" : "knn"; }
  Regime regime() const override { return Regime::Exponential; }

  std::vector<double> evaluate_all(const MarkedConfiguration& cfg) const override {
    std::vector<double> s(cfg.size(), 0.0);
    if (cfg.size() < 2) return s;
    const Graph g = knn_graph(cfg, k_, directed_);
    for (const auto& e : g.edges) {
      if (directed_) {
        s[e.src] += e.length;
      } else {
        s[e.src] += e.length / 2;
        s[e.dst] += e.length / 2;
      }
    }
    return s;
  }

  std::vector<StabRadiusSample> stab_radii(const MarkedConfiguration& cfg) const override {
    const Poly2 win = square_window(cfg.window());
    GridIndex grid(cfg);
    std::vector<StabRadiusSample> out;
    out.reserve(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i)
      out.push_back(knn_radius_impl(i, cfg, grid, win, k_));
    return out;
  }

 private:
  int k_;
  bool directed_;
};

class VoronoiScore final : public ScoreFunction {
 public:
  std::string id() const override { return "voronoi"; }
  Regime regime() const override { return Regime::Exponential; }

  std::vector<double> evaluate_all(const MarkedConfiguration& cfg) const override {
    std::vector<double> s(cfg.size(), 0.0);
    if (cfg.empty()) return s;
    const VoronoiDiagram vd = voronoi_clipped(cfg);
    for (const auto& c : vd.cells) {
      double len = 0;
      for (const auto& seg : c.segments)
        if (!seg.on_window) len += seg.length();
      s[c.generator] = len / 2;
    }
    return s;
  }

  std::vector<StabRadiusSample> stab_radii(const MarkedConfiguration& cfg) const override {
    const Poly2 win = square_window(cfg.window());
    GridIndex grid(cfg);
    std::vector<StabRadiusSample> out;
    out.reserve(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i)
      out.push_back(voronoi_radius_impl(i, cfg, grid, win));
    return out;
  }
};

class TimberScore final : public ScoreFunction {
 public:
  explicit TimberScore(double range) : range_(range) {
    if (range <= 0) throw std::invalid_argument("timber score: range must be positive");
  }
  std::string id() const override { return "timber"; }
  Regime regime() const override { return Regime::RangeBound; }
  double regime_param() const override { return range_; }

  std::vector<double> evaluate_all(const MarkedConfiguration& cfg) const override {
    std::vector<double> s(cfg.size(), 0.0);
    if (cfg.empty()) return s;
    GridIndex grid(cfg);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      const auto nb = grid.ball(cfg.position(i), range_);
      const double base = nb.size() > 1 ? 1.0 : 0.0;  // self always included
      s[i] = std::max(base + noise(cfg.mark(i)), 0.0);
    }
    return s;
  }

  std::vector<StabRadiusSample> stab_radii(const MarkedConfiguration& cfg) const override {
    const Window& w = cfg.window();
    std::vector<StabRadiusSample> out;
    out.reserve(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      bool cover = true;
      auto p = cfg.position(i);
      const std::vector<double> corners = w.corners();
      const int d = w.dim();
      for (std::size_t c = 0; c + d <= corners.size(); c += d) {
        double d2 = 0;
        for (int j = 0; j < d; ++j) d2 += (corners[c + j] - p[j]) * (corners[c + j] - p[j]);
        if (d2 > range_ * range_) {
          cover = false;
          break;
        }
      }
      if (cover)
        out.push_back({i, 2 * w.diameter(), true});
      else
        out.push_back({i, range_, false});
    }
    return out;
  }

 private:
  static double noise(const Mark& m) {
    if (m.kind == Mark::Kind::Real || m.kind == Mark::Kind::CategoricalReal) return m.real;
    throw std::invalid_argument("timber score: mark must carry a real noise component");
  }
  double range_;
};

class MaxlayerScore final : public ScoreFunction {
 public:
  explicit MaxlayerScore(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("maxlayer score: k must be positive");
  }
  std::string id() const override { return "maxlayer"; }
  Regime regime() const override { return Regime::RangeBound; }

  std::vector<double> evaluate_all(const MarkedConfiguration& cfg) const override {
    const Window& w = cfg.window();
    if (w.kind() != Window::Kind::Slab)
      throw std::invalid_argument("maxlayer score: slab window required");
    const std::size_t n = cfg.size();
    std::vector<double> s(n, 0.0);
    if (n == 0) return s;
    std::vector<std::vector<double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cfg.position(i);
      pts[i].assign(p.begin(), p.end());
    }
    const LayerAssignment la = maximal_layers(pts, k_);
    const auto& ang = w.angles();
    double n2 = 1.0;
    for (double a : ang) n2 += 1.0 / (std::tan(a) * std::tan(a));
    const double scale = 1.0 / std::sqrt(n2);
    for (std::size_t i : la.points_in_layer(k_))
      s[i] = scale * (w.slab_height() - w.slab_coordinate(cfg.position(i)));
    return s;
  }

  std::vector<StabRadiusSample> stab_radii(const MarkedConfiguration& cfg) const override {
    const Window& w = cfg.window();
    if (w.kind() != Window::Kind::Slab)
      throw std::invalid_argument("maxlayer score: slab window required");
    const double rad = maxlayer_radius(w.slab_height(), w.angles()[0]);
    std::vector<StabRadiusSample> out;
    out.reserve(cfg.size());
    const bool cover = rad >= w.diameter();
    for (std::size_t i = 0; i < cfg.size(); ++i)
      out.push_back({i, cover ? 2 * w.diameter() : rad, cover});
    return out;
  }

 private:
  int k_;
};

}  // namespace

double ScoreFunction::evaluate(std::size_t i, const MarkedConfiguration& cfg) const {
  if (i >= cfg.size()) throw std::domain_error("score: point not in configuration");
  return evaluate_all(cfg)[i];
}

StabRadiusSample ScoreFunction::stab_radius(std::size_t i, const MarkedConfiguration& cfg) const {
  if (i >= cfg.size()) throw std::domain_error("score: point not in configuration");
  return stab_radii(cfg)[i];
}

std::unique_ptr<ScoreFunction> make_score(const std::string& id, const ScoreParams& p) {
  if (id == "knn") return std::make_unique<KnnScore>(p.k, false);
  if (id == "knn-directed") return std::make_unique<KnnScore>(p.k, true);
  if (id == "voronoi") return std::make_unique<VoronoiScore>();
  if (id == "timber") return std::make_unique<TimberScore>(p.range);
  if (id == "maxlayer") return std::make_unique<MaxlayerScore>(p.k);
  throw std::invalid_argument("make_score: unknown score id '" + id + "'");
}

double knn_score(std::span<const double> x, const MarkedConfiguration& cfg, int k) {
  const std::size_t i = cfg.find(x);
  if (i == MarkedConfiguration::npos)
    throw std::domain_error("knn_score: point not in configuration");
  return KnnScore(k, false).evaluate(i, cfg);
}

StabRadiusSample knn_stab_radius(std::size_t i, const MarkedConfiguration& cfg, int k) {
  return KnnScore(k, false).stab_radius(i, cfg);
}

double voronoi_score(std::span<const double> x, const MarkedConfiguration& cfg) {
  const std::size_t i = cfg.find(x);
  if (i == MarkedConfiguration::npos)
    throw std::domain_error("voronoi_score: point not in configuration");
  return VoronoiScore().evaluate(i, cfg);
}

StabRadiusSample voronoi_stab_radius(std::size_t i, const MarkedConfiguration& cfg) {
  return VoronoiScore().stab_radius(i, cfg);
}

double timber_score(std::size_t i, const MarkedConfiguration& cfg, double range) {
  return TimberScore(range).evaluate(i, cfg);
}

double sum_scores(const MarkedConfiguration& cfg, const ScoreFunction& score) {
  const auto s = score.evaluate_all(cfg);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double trimmed_sum(const MarkedConfiguration& cfg, const ScoreFunction& score, double r) {
  if (r <= 0) return 0.0;
  const auto s = score.evaluate_all(cfg);
  const auto radii = score.stab_radii(cfg);
  double out = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (radii[i].radius <= r) out += s[i];
  return out;
}

}  // namespace stabsim
