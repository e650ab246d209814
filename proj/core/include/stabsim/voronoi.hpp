#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "stabsim/config.hpp"
#include "stabsim/window.hpp"

namespace stabsim {

// Voronoi tessellation of a planar point set clipped to a square window. Each
// cell is a convex polygon; boundary segments are flagged as interior (shared
// with the cell of a neighboring generator) or as window boundary.
struct VoronoiDiagram {
  struct Segment {
    double x1, y1, x2, y2;
    bool on_window;
    std::size_t neighbor;  // generator index when interior, npos otherwise
    double length() const { return std::hypot(x2 - x1, y2 - y1); }
  };
  struct Cell {
    std::size_t generator;
    std::vector<Segment> segments;  // counterclockwise order
    double area;
  };

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::vector<Cell> cells;

  double total_interior_length() const;  // each shared segment counted once
  void write_csv(std::ostream& os) const;
};

// Cells built generator by generator: the window polygon clipped against the
// perpendicular bisector of every competitor, nearest competitors first, with
// early exit once remaining competitors are too far to cut the polygon.
VoronoiDiagram voronoi_clipped(const MarkedConfiguration& cfg);

}  // namespace stabsim
