#include "stabsim/maximal_layers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "stabsim/window.hpp"

namespace stabsim {

namespace {

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) strict = true;
  }
  return strict;
}

// One staircase sweep over the still-unassigned planar points, marking the
// current maximal set. `ord` is sorted by x descending then y descending.
void sweep_layer_2d(const std::vector<std::vector<double>>& pts,
                    const std::vector<std::size_t>& ord, std::vector<int>& layer, int k) {
  double maxy = -std::numeric_limits<double>::infinity();
  for (std::size_t i : ord) {
    if (layer[i] != 0) continue;
    if (pts[i][1] > maxy) {
      layer[i] = k;
      maxy = pts[i][1];
    }
  }
}

std::vector<double> plane_normal(const Window& w) {
  const auto& ang = w.angles();
  std::vector<double> n(w.dim());
  for (std::size_t j = 0; j + 1 < n.size(); ++j) n[j] = 1.0 / std::tan(ang[j]);
  n.back() = 1.0;
  return n;
}

}  // namespace

std::vector<std::size_t> LayerAssignment::points_in_layer(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layer.size(); ++i)
    if (layer[i] == k) out.push_back(i);
  return out;
}

LayerAssignment maximal_layers(const std::vector<std::vector<double>>& points, int kmax) {
  if (kmax < 1) throw std::invalid_argument("maximal_layers: kmax must be positive");
  const std::size_t n = points.size();
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("maximal_layers: duplicate points");
  }
  LayerAssignment la;
  la.kmax = kmax;
  la.layer.assign(n, 0);
  if (n == 0) return la;
  const std::size_t d = points[0].size();

  if (d == 2) {
    std::vector<std::size_t> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      if (points[a][0] != points[b][0]) return points[a][0] > points[b][0];
      return points[a][1] > points[b][1];
    });
    for (int k = 1; k <= kmax; ++k) {
      sweep_layer_2d(points, ord, la.layer, k);
      if (std::none_of(la.layer.begin(), la.layer.end(), [](int l) { return l == 0; })) break;
    }
    return la;
  }

  for (int k = 1; k <= kmax; ++k) {
    bool assigned = false;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
      if (la.layer[i] != 0) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < n && !dominated; ++j)
        if (j != i && la.layer[j] == 0 && dominates(points[j], points[i])) dominated = true;
      if (!dominated) current.push_back(i);
    }
    for (std::size_t i : current) {
      la.layer[i] = k;
      assigned = true;
    }
    if (!assigned) break;
  }
  return la;
}

void write_layers_csv(std::ostream& os, const std::vector<std::vector<double>>& points,
                      const LayerAssignment& la) {
  const std::size_t d = points.empty() ? 0 : points[0].size();
  for (std::size_t j = 0; j < d; ++j) os << 'x' << (j + 1) << ',';
  os << "layer\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double c : points[i]) os << format_double(c) << ',';
    os << la.layer[i] << '\n';
  }
}

double layer_distance_sum(const MarkedConfiguration& cfg, int k) {
  if (k < 1) throw std::invalid_argument("layer_distance_sum: k must be positive");
  const Window& w = cfg.window();
  if (w.kind() != Window::Kind::Slab)
    throw std::invalid_argument("layer_distance_sum: slab window required");
  const std::size_t n = cfg.size();
  const int d = cfg.dim();
  const double r = w.slab_height();

  // Componentwise dominance in the raw coordinates; the slab geometry itself
  // bounds the dominance cone, which is what makes the functional range-bound.
  std::vector<std::vector<double>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cfg.position(i);
    pts[i].assign(p.begin(), p.end());
  }
  const LayerAssignment la = maximal_layers(pts, k);

  // Euclidean distance to the upper plane via explicit projection.
  const std::vector<double> nvec = plane_normal(w);
  double n2 = 0;
  for (double c : nvec) n2 += c * c;
  double s = 0;
  for (std::size_t i : la.points_in_layer(k)) {
    auto p = cfg.position(i);
    const double defect = r - w.slab_coordinate(p);
    double d2 = 0;
    for (int j = 0; j < d; ++j) {
      const double proj = p[j] + defect / n2 * nvec[j];
      d2 += (proj - p[j]) * (proj - p[j]);
    }
    s += std::sqrt(d2);
  }
  return s;
}

double layer_distance_sum_marks(const MarkedConfiguration& cfg, int k) {
  if (k < 1) throw std::invalid_argument("layer_distance_sum: k must be positive");
  const Window& w = cfg.window();
  if (w.kind() != Window::Kind::Slab)
    throw std::invalid_argument("layer_distance_sum: slab window required");
  const std::size_t n = cfg.size();
  const int d = cfg.dim();
  const double r = w.slab_height();

  // Layers come from the same raw dominance order; only the distance enters
  // through the sheared last coordinate (the mark m of each point).
  std::vector<std::vector<double>> pts(n);
  std::vector<std::vector<double>> sheared(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cfg.position(i);
    pts[i].assign(p.begin(), p.end());
    sheared[i] = shear_transform(p, w.angles());
  }
  const LayerAssignment la = maximal_layers(pts, k);

  const std::vector<double> nvec = plane_normal(w);
  double n2 = 0;
  for (double c : nvec) n2 += c * c;
  const double scale = 1.0 / std::sqrt(n2);  // = sin(theta_1) in d=2
  double s = 0;
  for (std::size_t i : la.points_in_layer(k)) s += r - sheared[i][d - 1];
  return scale * s;
}

double maxlayer_radius(double r, double theta1) {
  if (r < 0 || theta1 <= 0 || theta1 >= std::acos(-1.0) / 2)
    throw std::invalid_argument("maxlayer_radius: need r >= 0 and theta1 in (0, pi/2)");
  return r * std::tan(theta1) + 1.0;
}

}  // namespace stabsim
