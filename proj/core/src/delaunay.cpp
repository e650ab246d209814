#include "stabsim/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "stabsim/predicates.hpp"

namespace stabsim {

namespace {

struct Tri {
  std::size_t v[3];
  bool alive = true;
};

double edge_len(const std::vector<double>& pts, std::size_t a, std::size_t b) {
  const double dx = pts[2 * a] - pts[2 * b];
  const double dy = pts[2 * a + 1] - pts[2 * b + 1];
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Triangulation delaunay_2d(const MarkedConfiguration& cfg) {
  if (cfg.dim() != 2) throw std::invalid_argument("delaunay_2d: requires d=2");
  const std::size_t n = cfg.size();
  Triangulation out;
  out.edges.n_vertices = n;
  if (n < 2) return out;

  std::vector<double> pts(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[2 * i] = cfg.position(i)[0];
    pts[2 * i + 1] = cfg.position(i)[1];
  }

  // Collinearity check; collinear input degenerates to a path.
  bool collinear = true;
  for (std::size_t i = 2; i < n && collinear; ++i)
    if (orient2d(&pts[0], &pts[2], &pts[2 * i]) != 0) collinear = false;
  if (n == 2 || collinear) {
    std::vector<std::size_t> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(pts[2 * a], pts[2 * a + 1]) < std::pair(pts[2 * b], pts[2 * b + 1]);
    });
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::size_t a = ord[i], b = ord[i + 1];
      if (a > b) std::swap(a, b);
      out.edges.edges.push_back({a, b, edge_len(pts, a, b)});
    }
    std::sort(out.edges.edges.begin(), out.edges.edges.end(),
              [](const auto& a, const auto& b) {
                return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
              });
    return out;
  }

  // Bowyer-Watson with a super triangle placed far outside the data span.
  double lo[2] = {pts[0], pts[1]}, hi[2] = {pts[0], pts[1]};
  for (std::size_t i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      lo[j] = std::min(lo[j], pts[2 * i + j]);
      hi[j] = std::max(hi[j], pts[2 * i + j]);
    }
  const double cx = 0.5 * (lo[0] + hi[0]), cy = 0.5 * (lo[1] + hi[1]);
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1.0});
  const double big = 1e6 * span;
  std::vector<double> v(pts);
  v.insert(v.end(), {cx - big, cy - big, cx + big, cy - big, cx, cy + big});
  const std::size_t s0 = n, s1 = n + 1, s2 = n + 2;

  std::vector<Tri> tris;
  tris.push_back({{s0, s1, s2}, true});

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t p : order) {
    const double* pp = &v[2 * p];
    std::map<std::pair<std::size_t, std::size_t>, int> boundary;
    for (auto& t : tris) {
      if (!t.alive) continue;
      if (incircle(&v[2 * t.v[0]], &v[2 * t.v[1]], &v[2 * t.v[2]], pp) > 0) {
        t.alive = false;
        for (int e = 0; e < 3; ++e) {
          std::size_t a = t.v[e], b = t.v[(e + 1) % 3];
          auto key = std::minmax(a, b);
          auto it = boundary.find({key.first, key.second});
          if (it == boundary.end())
            boundary[{key.first, key.second}] = (a < b) ? 1 : -1;
          else
            boundary.erase(it);
        }
      }
    }
    for (const auto& [e, dir] : boundary) {
      std::size_t a = dir > 0 ? e.first : e.second;
      std::size_t b = dir > 0 ? e.second : e.first;
      tris.push_back({{a, b, p}, true});
    }
    std::erase_if(tris, [](const Tri& t) { return !t.alive; });
  }

  std::map<std::pair<std::size_t, std::size_t>, bool> edges;
  for (const auto& t : tris) {
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    std::array<std::size_t, 3> tri{t.v[0], t.v[1], t.v[2]};
    if (orient2d(&v[2 * tri[0]], &v[2 * tri[1]], &v[2 * tri[2]]) < 0)
      std::swap(tri[1], tri[2]);
    out.triangles.push_back(tri);
    for (int e = 0; e < 3; ++e) {
      auto key = std::minmax(tri[e], tri[(e + 1) % 3]);
      edges[{key.first, key.second}] = true;
    }
  }
  std::sort(out.triangles.begin(), out.triangles.end());
  for (const auto& [e, _] : edges)
    out.edges.edges.push_back({e.first, e.second, edge_len(pts, e.first, e.second)});
  return out;
}

}  // namespace stabsim
