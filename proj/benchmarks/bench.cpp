#include <benchmark/benchmark.h>

#include <vector>

#include "stabsim/bounds.hpp"
#include "stabsim/config.hpp"
#include "stabsim/graph.hpp"
#include "stabsim/poisson.hpp"
#include "stabsim/scores.hpp"
#include "stabsim/voronoi.hpp"
#include "stabsim/window.hpp"

namespace {

using namespace stabsim;

void BM_SamplePoisson(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto cfg = sample_poisson(Window::cube(2, alpha), 1.0, MarkSampler::none(), seed++);
    benchmark::DoNotOptimize(cfg.size());
  }
}
BENCHMARK(BM_SamplePoisson)->Arg(256)->Arg(1024)->Arg(4096);

void BM_KnnGraph(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const auto cfg = sample_poisson(Window::cube(2, alpha), 1.0, MarkSampler::none(), 2);
  for (auto _ : state) {
    auto g = knn_graph(cfg, 1, false);
    benchmark::DoNotOptimize(g.edges.size());
  }
}
BENCHMARK(BM_KnnGraph)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Voronoi(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const auto cfg = sample_poisson(Window::cube(2, alpha), 1.0, MarkSampler::none(), 3);
  for (auto _ : state) {
    auto vd = voronoi_clipped(cfg);
    benchmark::DoNotOptimize(vd.cells.size());
  }
}
BENCHMARK(BM_Voronoi)->Arg(256)->Arg(1024)->Arg(4096);

void BM_KnnStabRadii(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const auto cfg = sample_poisson(Window::cube(2, alpha), 1.0, MarkSampler::none(), 4);
  const auto score = make_score("knn", {.k = 1});
  for (auto _ : state) {
    auto radii = score->stab_radii(cfg);
    benchmark::DoNotOptimize(radii.size());
  }
}
BENCHMARK(BM_KnnStabRadii)->Arg(256)->Arg(1024);

void BM_VoronoiStabRadii(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const auto cfg = sample_poisson(Window::cube(2, alpha), 1.0, MarkSampler::none(), 5);
  const auto score = make_score("voronoi", {});
  for (auto _ : state) {
    auto radii = score->stab_radii(cfg);
    benchmark::DoNotOptimize(radii.size());
  }
}
BENCHMARK(BM_VoronoiStabRadii)->Arg(256)->Arg(1024);

void BM_TvShiftExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_shift_exact_triangular(1.0, n, 0.5));
  }
}
BENCHMARK(BM_TvShiftExact)->Arg(1)->Arg(5)->Arg(10);

void BM_TvShiftSpectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_shift_spectral_triangular(1.0, n, 0.5));
  }
}
BENCHMARK(BM_TvShiftSpectral)->Arg(5)->Arg(25);

}  // namespace

BENCHMARK_MAIN();
