#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "stabsim/config.hpp"
#include "stabsim/graph.hpp"

namespace stabsim {

// Delaunay triangulation of a planar point set. When every point is collinear
// the triangle list is empty and edges connect consecutive points along the
// line. Cocircular ties resolve deterministically by insertion (canonical)
// order, keeping the empty-circumcircle property in its non-strict form.
struct Triangulation {
  std::vector<std::array<std::size_t, 3>> triangles;  // counterclockwise
  Graph edges;                                        // undirected edge view
};

Triangulation delaunay_2d(const MarkedConfiguration& cfg);

}  // namespace stabsim
