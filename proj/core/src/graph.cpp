#include "stabsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "stabsim/grid_index.hpp"

namespace stabsim {

namespace {

double dist(const MarkedConfiguration& cfg, std::size_t a, std::size_t b) {
  double s = 0;
  auto p = cfg.position(a), q = cfg.position(b);
  for (int j = 0; j < cfg.dim(); ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
  return std::sqrt(s);
}

double dist2(const MarkedConfiguration& cfg, std::size_t a, std::size_t b) {
  double s = 0;
  auto p = cfg.position(a), q = cfg.position(b);
  for (int j = 0; j < cfg.dim(); ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
  return s;
}

void sort_dedupe(Graph& g) {
  auto key = [](const Graph::Edge& e) { return std::pair(e.src, e.dst); };
  std::sort(g.edges.begin(), g.edges.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [&](const auto& a, const auto& b) { return key(a) == key(b); }),
                g.edges.end());
}

}  // namespace

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (!directed && u > v) std::swap(u, v);
  for (const auto& e : edges)
    if (e.src == u && e.dst == v) return true;
  return false;
}

void Graph::write_csv(std::ostream& os) const {
  os << "src,dst,length\n";
  for (const auto& e : edges)
    os << e.src << ',' << e.dst << ',' << format_double(e.length) << '\n';
}

double total_edge_length(const Graph& g) {
  double s = 0;
  for (const auto& e : g.edges) s += e.length;
  return s;
}

std::vector<std::size_t> knn_of(const MarkedConfiguration& cfg, std::size_t i, int k) {
  const std::size_t n = cfg.size();
  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
  std::vector<std::size_t> out;
  if (want == 0) return out;

  GridIndex grid(cfg);
  std::vector<std::size_t> cand;
  auto q = cfg.position(i);
  // Expand rings until the want-th candidate distance is covered by the rings
  // collected so far (a point in ring r is at Euclidean distance >= (r-1)*cell).
  std::vector<std::pair<double, std::size_t>> best;
  for (long r = 0;; ++r) {
    cand.clear();
    const bool more = grid.ring(q, r, cand);
    for (std::size_t c : cand) {
      if (c == i) continue;
      best.emplace_back(dist2(cfg, i, c), c);
    }
    std::sort(best.begin(), best.end());
    if (best.size() > want) best.resize(want);
    const double safe = static_cast<double>(r) * grid.cell();
    if (best.size() == want && std::sqrt(best.back().first) <= safe) break;
    if (!more) break;
  }
  out.reserve(best.size());
  for (const auto& [d2, c] : best) out.push_back(c);
  return out;
}

Graph knn_graph(const MarkedConfiguration& cfg, int k, bool directed) {
  if (k < 1) throw std::invalid_argument("knn_graph: k must be positive");
  const std::size_t n = cfg.size();
  Graph g{n, directed, {}};
  if (n < 2) return g;

  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
  GridIndex grid(cfg);
  std::vector<std::size_t> cand;
  std::vector<std::pair<double, std::size_t>> best;
  for (std::size_t i = 0; i < n; ++i) {
    best.clear();
    auto q = cfg.position(i);
    for (long r = 0;; ++r) {
      cand.clear();
      const bool more = grid.ring(q, r, cand);
      for (std::size_t c : cand) {
        if (c == i) continue;
        best.emplace_back(dist2(cfg, i, c), c);
      }
      std::sort(best.begin(), best.end());
      if (best.size() > want) best.resize(want);
      const double safe = static_cast<double>(r) * grid.cell();
      if (best.size() == want && std::sqrt(best.back().first) <= safe) break;
      if (!more) break;
    }
    for (const auto& [d2, c] : best) {
      std::size_t u = i, v = c;
      if (!directed && u > v) std::swap(u, v);
      g.edges.push_back({u, v, std::sqrt(d2)});
    }
  }
  sort_dedupe(g);
  return g;
}

Graph proximity_graph(const MarkedConfiguration& cfg, ProximityKind kind) {
  const std::size_t n = cfg.size();
  if (n < 2) throw std::invalid_argument("proximity_graph: need at least 2 points");
  Graph g{n, false, {}};
  const int d = cfg.dim();

  if (kind == ProximityKind::Soi) {
    std::vector<double> nn(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = knn_of(cfg, i, 1);
      nn[i] = dist(cfg, i, v[0]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double len = dist(cfg, i, j);
        if (len <= nn[i] + nn[j] + kGeoTol) g.edges.push_back({i, j, len});
      }
    return g;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij2 = dist2(cfg, i, j);
      bool blocked = false;
      for (std::size_t m = 0; m < n && !blocked; ++m) {
        if (m == i || m == j) continue;
        if (kind == ProximityKind::Gabriel) {
          // Open diameter ball: center (i+j)/2, radius |ij|/2.
          double c2 = 0;
          auto p = cfg.position(i), q = cfg.position(j), x = cfg.position(m);
          for (int t = 0; t < d; ++t) {
            const double c = 0.5 * (p[t] + q[t]);
            c2 += (x[t] - c) * (x[t] - c);
          }
          blocked = c2 < 0.25 * dij2 - kGeoTol;
        } else {
          blocked = dist2(cfg, m, i) < dij2 - kGeoTol && dist2(cfg, m, j) < dij2 - kGeoTol;
        }
      }
      if (!blocked) g.edges.push_back({i, j, std::sqrt(dij2)});
    }
  return g;
}

ProximityKind proximity_kind_from_string(const std::string& s) {
  if (s == "gabriel") return ProximityKind::Gabriel;
  if (s == "rng") return ProximityKind::Rng;
  if (s == "soi") return ProximityKind::Soi;
  throw std::invalid_argument("proximity_graph: unknown kind '" + s + "'");
}

}  // namespace stabsim
