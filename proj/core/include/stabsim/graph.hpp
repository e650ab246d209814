#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "stabsim/config.hpp"

namespace stabsim {

// Edge list over vertex indices into a configuration's canonical order.
// Undirected edges are stored with src < dst; directed edges as given.
struct Graph {
  struct Edge {
    std::size_t src, dst;
    double length;
  };

  std::size_t n_vertices = 0;
  bool directed = false;
  std::vector<Edge> edges;

  bool has_edge(std::size_t u, std::size_t v) const;
  void write_csv(std::ostream& os) const;
};

double total_edge_length(const Graph& g);

// k nearest neighbor graph. Undirected: {x,y} is an edge when either point is
// among the k nearest of the other. Distance ties break by index (canonical
// lexicographic point order). If n <= k the graph is complete.
Graph knn_graph(const MarkedConfiguration& cfg, int k, bool directed);

// Indices of the k nearest neighbors of point i, nearest first, ties by index.
std::vector<std::size_t> knn_of(const MarkedConfiguration& cfg, std::size_t i, int k);

enum class ProximityKind { Gabriel, Rng, Soi };

// Gabriel: edge when the open ball on diameter xy holds no other point.
// Rng (relative neighborhood): edge when the lune B(x,|xy|) ∩ B(y,|xy|) is
// empty of other points. Soi (sphere of influence): edge when
// |xy| <= dist(x, N(x)) + dist(y, N(y)) with N the nearest neighbor.
Graph proximity_graph(const MarkedConfiguration& cfg, ProximityKind kind);

ProximityKind proximity_kind_from_string(const std::string& s);

}  // namespace stabsim
