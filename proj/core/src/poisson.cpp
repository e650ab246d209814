#include "stabsim/poisson.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabsim {

namespace {

// Draw N uniform positions in the window, resampling the rare exact
// duplicate so configurations stay simple.
MarkedConfiguration fill(const Window& window, double lambda,
                         const MarkSampler& marks, std::uint64_t seed) {
  const int d = window.dim();
  Rng count_rng(Rng::derive(seed, 0));
  Rng pos_rng(Rng::derive(seed, 1));
  Rng mark_rng(Rng::derive(seed, 2));

  const std::uint64_t n = count_rng.poisson(lambda * window.volume());
  MarkedConfiguration cfg(window, lambda);
  std::vector<double> x(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (window.kind() == Window::Kind::Cube) {
      const double h = window.side() / 2;
      for (int j = 0; j < d; ++j) x[j] = pos_rng.uniform(-h, h);
    } else {
      for (int j = 0; j + 1 < d; ++j) x[j] = pos_rng.uniform(0.0, window.side());
      x[d - 1] = pos_rng.uniform(0.0, window.slab_height());
      x = shear_inverse(x, window.angles());
      x.resize(d);
    }
    cfg.push_unchecked(x, Mark::none());
  }
  cfg.sort_canonical();
  cfg.dedupe_exact();
  // Marks assigned in canonical order from their own stream.
  for (std::size_t i = 0; i < cfg.size(); ++i)
    cfg.set_mark_unchecked(i, marks.sample(mark_rng));
  return cfg;
}

}  // namespace

MarkedConfiguration sample_poisson(const Window& window, double lambda,
                                   const MarkSampler& marks,
                                   std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sample_poisson: lambda must be > 0");
  if (!(window.alpha() > 0.0)) throw std::invalid_argument("sample_poisson: invalid window");
  return fill(window, lambda, marks, seed);
}

MarkedConfiguration sample_slab(int d, double alpha, double r,
                                const std::vector<double>& angles,
                                double lambda, const MarkSampler& marks,
                                std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sample_slab: lambda must be > 0");
  Window w = Window::slab(d, alpha, r, angles);
  return fill(w, lambda, marks, seed);
}

}  // namespace stabsim
