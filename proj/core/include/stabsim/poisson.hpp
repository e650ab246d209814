#ifndef STABSIM_POISSON_HPP_
#define STABSIM_POISSON_HPP_

#include <cstdint>

#include "stabsim/config.hpp"

namespace stabsim {

// Homogeneous marked Poisson process on the window: N ~ Poisson(lambda *
// volume), positions i.i.d. uniform, marks i.i.d. from the sampler on an
// independent stream split from the seed. Deterministic given the seed.
MarkedConfiguration sample_poisson(const Window& window, double lambda,
                                   const MarkSampler& marks,
                                   std::uint64_t seed);

// Poisson process on the slab, sampled exactly by drawing uniformly in the
// sheared box [0, alpha^{1/(d-1)}]^{d-1} x [0, r] and applying the inverse
// shear (volume-preserving, no rejection).
MarkedConfiguration sample_slab(int d, double alpha, double r,
                                const std::vector<double>& angles,
                                double lambda, const MarkSampler& marks,
                                std::uint64_t seed);

}  // namespace stabsim

#endif  // STABSIM_POISSON_HPP_
