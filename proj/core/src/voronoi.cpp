#include "stabsim/voronoi.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "stabsim/grid_index.hpp"

namespace stabsim {

namespace {

struct Poly {
  // lab[i] labels the edge from v[i] to v[(i+1) % size].
  std::vector<std::array<double, 2>> v;
  std::vector<std::pair<bool, std::size_t>> lab;  // {on_window, neighbor}
};

Poly window_polygon(const Window& w) {
  if (w.dim() != 2) throw std::invalid_argument("voronoi_clipped: requires d=2");
  Poly p;
  const auto wlab = std::pair(true, VoronoiDiagram::npos);
  if (w.kind() == Window::Kind::Cube) {
    const double h = w.side() / 2;
    p.v = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
  } else {
    const double b = w.side(), r = w.slab_height();
    const auto& ang = w.angles();
    const std::vector<double> s0{0, 0}, s1{b, 0}, s2{b, r}, s3{0, r};
    std::vector<double> c0 = shear_inverse(s0, ang);
    std::vector<double> c1 = shear_inverse(s1, ang);
    std::vector<double> c2 = shear_inverse(s2, ang);
    std::vector<double> c3 = shear_inverse(s3, ang);
    p.v = {{c0[0], c0[1]}, {c1[0], c1[1]}, {c2[0], c2[1]}, {c3[0], c3[1]}};
  }
  p.lab.assign(4, wlab);
  return p;
}

// Clip a convex polygon by the half plane {z : n.z <= c}. The freshly cut
// edge is labeled as interior with the given neighbor.
Poly clip(const Poly& in, double nx, double ny, double c, std::size_t neighbor) {
  Poly out;
  const std::size_t m = in.v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = in.v[i];
    const auto& q = in.v[(i + 1) % m];
    const double sp = c - (nx * p[0] + ny * p[1]);
    const double sq = c - (nx * q[0] + ny * q[1]);
    const bool pin = sp >= 0, qin = sq >= 0;
    if (pin) {
      out.v.push_back(p);
      out.lab.push_back(in.lab[i]);
      if (!qin) {
        const double t = sp / (sp - sq);
        out.v.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        out.lab.emplace_back(false, neighbor);
      }
    } else if (qin) {
      const double t = sp / (sp - sq);
      out.v.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      out.lab.push_back(in.lab[i]);
    }
  }
  // Drop degenerate edges produced by near-tangent cuts.
  Poly clean;
  const std::size_t k = out.v.size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = out.v[i];
    const auto& b = out.v[(i + 1) % k];
    if (std::hypot(b[0] - a[0], b[1] - a[1]) > kGeoTol) {
      clean.v.push_back(a);
      clean.lab.push_back(out.lab[i]);
    }
  }
  return clean;
}

}  // namespace

double VoronoiDiagram::total_interior_length() const {
  double s = 0;
  for (const auto& c : cells)
    for (const auto& seg : c.segments)
      if (!seg.on_window) s += seg.length();
  return s / 2;
}

void VoronoiDiagram::write_csv(std::ostream& os) const {
  os << "generator,x1,y1,x2,y2,flag,neighbor\n";
  for (const auto& c : cells)
    for (const auto& s : c.segments) {
      os << c.generator << ',' << format_double(s.x1) << ',' << format_double(s.y1) << ','
         << format_double(s.x2) << ',' << format_double(s.y2) << ','
         << (s.on_window ? "window" : "interior") << ',';
      if (s.on_window)
        os << "-1";
      else
        os << s.neighbor;
      os << '\n';
    }
}

VoronoiDiagram voronoi_clipped(const MarkedConfiguration& cfg) {
  VoronoiDiagram vd;
  const std::size_t n = cfg.size();
  if (n == 0) return vd;
  const Poly win = window_polygon(cfg.window());

  GridIndex grid(cfg);
  std::vector<std::size_t> cand;
  std::vector<std::pair<double, std::size_t>> order;
  vd.cells.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double gx = cfg.position(i)[0], gy = cfg.position(i)[1];
    Poly cell = win;
    auto maxdist = [&] {
      double m = 0;
      for (const auto& v : cell.v) m = std::max(m, std::hypot(v[0] - gx, v[1] - gy));
      return m;
    };
    double sec = 2 * maxdist();  // competitors beyond this cannot cut the cell
    bool done = false;
    for (long r = 0; !done; ++r) {
      cand.clear();
      const bool more = grid.ring(cfg.position(i), r, cand);
      order.clear();
      for (std::size_t c : cand) {
        if (c == i) continue;
        const double d = std::hypot(cfg.position(c)[0] - gx, cfg.position(c)[1] - gy);
        order.emplace_back(d, c);
      }
      std::sort(order.begin(), order.end());
      for (const auto& [d, c] : order) {
        if (d >= sec) break;
        const double nx = cfg.position(c)[0] - gx, ny = cfg.position(c)[1] - gy;
        const double dot = nx * (gx + cfg.position(c)[0]) + ny * (gy + cfg.position(c)[1]);
        cell = clip(cell, nx, ny, 0.5 * dot, c);
        sec = 2 * maxdist();
      }
      if (!more) done = true;
      // Ring r+1 points are at distance at least r*cell from the generator.
      if (static_cast<double>(r) * grid.cell() >= sec) done = true;
    }

    auto& out = vd.cells[i];
    out.generator = i;
    double area = 0;
    const std::size_t m = cell.v.size();
    for (std::size_t e = 0; e < m; ++e) {
      const auto& a = cell.v[e];
      const auto& b = cell.v[(e + 1) % m];
      out.segments.push_back({a[0], a[1], b[0], b[1], cell.lab[e].first, cell.lab[e].second});
      area += a[0] * b[1] - b[0] * a[1];
    }
    out.area = 0.5 * area;
  }
  return vd;
}

}  // namespace stabsim
