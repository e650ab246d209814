#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "stabsim/config.hpp"

namespace stabsim {

// Pareto layer decomposition. A point is maximal when no other point weakly
// dominates it componentwise with at least one strict coordinate. Layer 1
// holds the maximal points; layer j+1 the maximal points once layers <= j are
// removed. Points beyond kmax stay unassigned (layer 0).
struct LayerAssignment {
  int kmax = 0;
  std::vector<int> layer;  // per point, 0 = unassigned (beyond kmax)

  std::vector<std::size_t> points_in_layer(int k) const;
};

LayerAssignment maximal_layers(const std::vector<std::vector<double>>& points, int kmax);

void write_layers_csv(std::ostream& os, const std::vector<std::vector<double>>& points,
                      const LayerAssignment& la);

// Sum of Euclidean distances from layer-k points of a slab configuration to
// the slab's upper plane. Layers use componentwise dominance in the raw
// coordinates; the slab geometry bounds the dominance cone. Returns 0 when
// fewer than k layers exist.
double layer_distance_sum(const MarkedConfiguration& cfg, int k);

// Same functional computed through the mark representation: the sheared last
// coordinate m of each layer-k point enters as sin(theta_1) * (r - m) in d=2,
// and with the plane-normal scale factor in general dimension.
double layer_distance_sum_marks(const MarkedConfiguration& cfg, int k);

// Range of dependence of layer membership for slab parameters: r tan(theta_1) + 1.
double maxlayer_radius(double r, double theta1);

}  // namespace stabsim
