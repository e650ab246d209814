#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stabsim/bounds.hpp"
#include "stabsim/rng.hpp"

#ifdef STABSIM_HAVE_FFTW
#include <fftw3.h>
#endif

using namespace stabsim;

namespace {

double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

TEST_CASE("triangular characteristic function") {
  CHECK(triangular_cf(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(triangular_cf(2.5, 0.0) == doctest::Approx(1.0));
  const double pi = std::numbers::pi;
  CHECK(triangular_cf(1.0, pi) == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-14));
  // Tiny s hits the continuous extension, not a 0/0.
  CHECK(triangular_cf(1.0, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
  Rng rng(Rng::derive(11, 0));
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.1, 5.0), s = rng.uniform(-50.0, 50.0);
    const double v = triangular_cf(a, s);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
}

TEST_CASE("tv shift bound for triangular sums") {
  CHECK(tv_shift_bound_triangular(1.0, 1, 0.0) == doctest::Approx(0.0));
  const double pi = std::numbers::pi;
  const double expect = 0.5 * (std::sqrt(3.0 / pi) + 2.0 / (pi * pi));
  CHECK(tv_shift_bound_triangular(1.0, 1, 0.5) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.58992).epsilon(1e-4));
  double prev = tv_shift_bound_triangular(1.0, 1, 0.5);
  for (int n : {2, 5, 10, 100}) {
    const double v = tv_shift_bound_triangular(1.0, n, 0.5);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("tv shift exact for triangular sums") {
  CHECK(tv_shift_exact_triangular(1.0, 1, 0.5) == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(tv_shift_exact_triangular(1.0, 1, 2.0) == doctest::Approx(1.0));
  CHECK(tv_shift_exact_triangular(0.5, 3, 3.0) == doctest::Approx(1.0));
  CHECK(tv_shift_exact_triangular(2.0, 4, 0.0) == doctest::Approx(0.0));
  // Scale invariance: (a, gamma) and (ca, c gamma) give the same distance.
  CHECK(tv_shift_exact_triangular(2.0, 3, 0.6) ==
        doctest::Approx(tv_shift_exact_triangular(1.0, 3, 0.3)).epsilon(1e-12));
}

TEST_CASE("exact tv never exceeds the bound") {
  for (double a : {0.5, 1.0, 2.0})
    for (int n = 1; n <= 5; ++n)
      for (int g = 1; g <= 10; ++g) {
        const double gamma = g / 10.0;
        const double ex = tv_shift_exact_triangular(a, n, gamma);
        const double bd = tv_shift_bound_triangular(a, n, gamma);
        CHECK(ex <= std::min(1.0, bd) + 1e-12);
      }
}

TEST_CASE("spectral route matches the polynomial oracle") {
  for (int n : {1, 2, 3, 5, 8}) {
    for (double gamma : {0.2, 0.7, 1.5}) {
      const double ex = tv_shift_exact_triangular(1.0, n, gamma);
      const double sp = tv_shift_spectral_triangular(1.0, n, gamma);
      CHECK(sp == doctest::Approx(ex).epsilon(1e-5));
    }
  }
  // n > 20 falls back to the spectral route internally.
  const double big = tv_shift_exact_triangular(1.0, 25, 0.5);
  CHECK(big == doctest::Approx(tv_shift_spectral_triangular(1.0, 25, 0.5)).epsilon(1e-12));
  CHECK(big > 0.0);
  CHECK(big < 1.0);
}

#ifdef STABSIM_HAVE_FFTW
TEST_CASE("fft convolution cross-check of the exact tv") {
  const double a = 1.0;
  const double h = 2e-4;
  for (int n : {1, 2, 3, 4, 5}) {
    for (double gamma : {0.3, 0.8}) {
      const int m = static_cast<int>(std::round(2 * a / h)) + 1;  // [-a, a]
      int need = n * (m - 1) + 1;
      int N = 1;
      while (N < need + m) N *= 2;
      std::vector<fftw_complex> in(N), freq(N);
      for (int i = 0; i < N; ++i) {
        in[i][0] = in[i][1] = 0.0;
        if (i < m) {
          const double x = -a + i * h;
          in[i][0] = (1.0 - std::abs(x) / a) / a;
        }
      }
      fftw_plan fwd = fftw_plan_dft_1d(N, in.data(), freq.data(), FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_execute(fwd);
      fftw_destroy_plan(fwd);
      // n-fold convolution: raise the transform to the n-th power, with the
      // grid-step factor applied per extra convolution.
      for (int i = 0; i < N; ++i) {
        const std::complex<double> z(freq[i][0], freq[i][1]);
        const std::complex<double> p = std::pow(z * h, n) / h;
        freq[i][0] = p.real();
        freq[i][1] = p.imag();
      }
      std::vector<fftw_complex> out(N);
      fftw_plan bwd = fftw_plan_dft_1d(N, freq.data(), out.data(), FFTW_BACKWARD, FFTW_ESTIMATE);
      fftw_execute(bwd);
      fftw_destroy_plan(bwd);
      // Density of T_n + n*a on [0, 2na], sampled at grid nodes i*h.
      // TV(T_n, T_n + gamma) = integral of g_n over [-gamma/2, gamma/2].
      auto g_shifted = [&](double x) {
        const double t = (x + n * a) / h;
        const long i0 = static_cast<long>(std::floor(t));
        if (i0 < 0 || i0 + 1 >= static_cast<long>(N)) return 0.0;
        const double w = t - static_cast<double>(i0);
        const double v0 = out[i0][0] / N, v1 = out[i0 + 1][0] / N;
        return (1 - w) * v0 + w * v1;
      };
      double tv = 0.0;
      const int steps = 4000;
      const double lo = -gamma / 2, step = gamma / steps;
      for (int i = 0; i <= steps; ++i) {
        const double wgt = (i == 0 || i == steps) ? 0.5 : 1.0;
        tv += wgt * g_shifted(lo + i * step);
      }
      tv *= step;
      CHECK(tv == doctest::Approx(tv_shift_exact_triangular(a, n, gamma)).epsilon(1e-6));
    }
  }
}
#endif

TEST_CASE("triangular minorant certification") {
  const int m = 2001;
  const double x0 = -1.0, dx = 2.0 / (m - 1);
  std::vector<double> kappa(m);
  for (int i = 0; i < m; ++i) {
    const double x = x0 + i * dx;
    kappa[i] = std::max(0.0, 1.0 - std::abs(x));
  }
  const Minorant self = triangular_minorant(kappa, x0, dx);
  CHECK(self.u == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(self.theta > 0.0);
  for (int i = 0; i < m; ++i) {
    const double x = x0 + i * dx;
    const double minor =
        self.theta * std::max(0.0, 1.0 - std::abs(x - self.u) / self.a) / self.a;
    CHECK(minor <= kappa[i] + 1e-12);
  }

  // Flat density: half-width grows to the distance to the nearer edge.
  std::vector<double> flat(1001, 1.0);
  const Minorant f = triangular_minorant(flat, 0.0, 1e-3);
  CHECK(f.b == doctest::Approx(0.5));
  CHECK(f.theta == doctest::Approx(f.a * 0.5).epsilon(1e-12));

  CHECK(f.a == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS((void)triangular_minorant(std::vector<double>(10, 0.0), 0.0, 0.1),
                  std::domain_error);

  // Random smooth bumps stay above their certified minorant.
  Rng rng(Rng::derive(23, 4));
  for (int rep = 0; rep < 10; ++rep) {
    const double c = rng.uniform(-2.0, 2.0), s = rng.uniform(0.3, 2.0);
    std::vector<double> vals(801);
    for (int i = 0; i < 801; ++i) {
      const double x = -4.0 + i * 0.01;
      vals[i] = std::exp(-(x - c) * (x - c) / (2 * s * s));
    }
    const Minorant mm = triangular_minorant(vals, -4.0, 0.01);
    for (int i = 0; i < 801; ++i) {
      const double x = -4.0 + i * 0.01;
      const double minor =
          mm.theta * std::max(0.0, 1.0 - std::abs(x - mm.u) / mm.a) / mm.a;
      CHECK(minor <= vals[i] + 1e-12);
    }
  }
}

TEST_CASE("normal tv exact worked values") {
  CHECK(normal_tv_exact(0.3, 1.7, 0.3, 1.7) == doctest::Approx(0.0));
  const double shift = phi_cdf(0.5) - phi_cdf(-0.5);
  CHECK(normal_tv_exact(0.0, 1.0, 1.0, 1.0) == doctest::Approx(shift).epsilon(1e-12));
  CHECK(shift == doctest::Approx(0.38292).epsilon(1e-4));

  const double xs = std::sqrt(8.0 * std::numbers::ln2 / 3.0) * 2.0;  // x_sigma, sigma=2
  const double scale = 2 * (phi_cdf(xs / 2.0) - phi_cdf(xs / 4.0));
  (void)scale;
  const double em = normal_tv_exact(0.0, 1.0, 0.0, 2.0);
  CHECK(em == doctest::Approx(0.32261).epsilon(2e-4));
  // Quadrature route agrees with the closed form when nudged off the
  // equal-mean special case.
  CHECK(normal_tv_exact(0.0, 1.0, 1e-13, 2.0) == doctest::Approx(em).epsilon(1e-8));
  CHECK(normal_tv_exact(0.0, 1.0, 1e-13, 1.0) == doctest::Approx(0.0).epsilon(1e-10));

  // Symmetry and scale invariance.
  CHECK(normal_tv_exact(1.0, 2.0, 3.0, 0.5) ==
        doctest::Approx(normal_tv_exact(3.0, 0.5, 1.0, 2.0)).epsilon(1e-10));
  CHECK(normal_tv_exact(0.0, 1.0, 1.0, 2.0) ==
        doctest::Approx(normal_tv_exact(0.0, 10.0, 10.0, 20.0)).epsilon(1e-8));
}

TEST_CASE("normal tv bound worked values and domination") {
  CHECK(normal_tv_bound(0.4, 1.1, 0.4, 1.1) == doctest::Approx(0.0));
  const double c = std::sqrt(2.0 / std::numbers::pi);
  CHECK(normal_tv_bound(0.0, 1.0, 1.0, 1.0) == doctest::Approx(c * 0.5).epsilon(1e-12));
  CHECK(normal_tv_bound(0.0, 1.0, 0.0, 2.0) == doctest::Approx(c).epsilon(1e-12));

  const double mus[] = {-2.0, -0.5, 0.0, 0.7, 1.5};
  const double sigmas[] = {0.4, 0.8, 1.0, 1.6, 2.5};
  for (double m1 : mus)
    for (double m2 : mus)
      for (double s1 : sigmas)
        for (double s2 : sigmas) {
          const double ex = normal_tv_exact(m1, s1, m2, s2);
          const double bd = normal_tv_bound(m1, s1, m2, s2);
          CHECK(ex <= bd + 1e-9);
          CHECK(ex >= 0.0);
          CHECK(ex <= 1.0 + 1e-12);
        }
}

TEST_CASE("stabilization tail bounds") {
  CHECK(knn_radius_tail_bound(1.0, 1, 0.0) == doctest::Approx(1.0));
  CHECK(knn_radius_tail_bound(1.0, 1, 0.0, false) == doctest::Approx(6.0));
  CHECK(knn_radius_tail_bound(1.0, 1, 3.0, false) ==
        doctest::Approx(6 * std::exp(-0.116) * 1.116).epsilon(1e-12));
  CHECK(knn_radius_tail_bound(1.0, 1, 3.0) == doctest::Approx(1.0));
  CHECK(knn_radius_tail_bound(1.0, 1, 30.0) ==
        doctest::Approx(6 * std::exp(-11.6) * 12.6).epsilon(1e-12));
  CHECK(knn_radius_tail_bound(1.0, 1, 30.0) == doctest::Approx(6.9e-4).epsilon(2e-2));

  CHECK(voronoi_radius_tail_bound(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(voronoi_radius_tail_bound(1.0, 15.0) ==
        doctest::Approx(6 * std::exp(-2.9)).epsilon(1e-12));
  CHECK(voronoi_radius_tail_bound(1.0, 15.0) == doctest::Approx(0.3301).epsilon(1e-3));
  double prev = 2.0;
  for (double t = 0.0; t <= 40.0; t += 0.5) {
    const double v = voronoi_radius_tail_bound(2.0, t);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // Larger k loosens the knn bound; larger lambda eventually tightens it.
  CHECK(knn_radius_tail_bound(1.0, 3, 20.0, false) >
        knn_radius_tail_bound(1.0, 1, 20.0, false));
  CHECK(knn_radius_tail_bound(4.0, 1, 20.0, false) <
        knn_radius_tail_bound(1.0, 1, 20.0, false));
}

TEST_CASE("trimming bound") {
  const auto exp_tail = [](double r) { return std::exp(-r); };
  CHECK(trimming_bound(100.0, 1.0, exp_tail, 10.0, false) ==
        doctest::Approx(100 * std::exp(-10.0)).epsilon(1e-12));
  CHECK(trimming_bound(100.0, 1.0, exp_tail, 10.0) ==
        doctest::Approx(4.54e-3).epsilon(1e-2));
  CHECK(trimming_bound(100.0, 1.0, exp_tail, 0.0) == doctest::Approx(1.0));
  const auto step_tail = [](double r) { return r > 2.0 ? 0.0 : 1.0; };
  CHECK(trimming_bound(50.0, 1.0, step_tail, 3.0) == doctest::Approx(0.0));
}

TEST_CASE("theorem rates") {
  CHECK(theorem_rate(1e4, {.d = 2, .regime = Regime::RangeBound}) ==
        doctest::Approx(0.01).epsilon(1e-12));
  const double e2 = std::exp(2.0);
  CHECK(theorem_rate(e2, {.d = 2, .regime = Regime::Exponential}) ==
        doctest::Approx(32.0 / std::numbers::e).epsilon(1e-12));

  const RateParams poly{.d = 2, .regime = Regime::Polynomial, .beta = 100.0, .k = 3};
  // beta(k-2)[beta(k-2) - d(15k-14)] / ((k b - 2b - d k)(5 d k + 2 b k - 4 b))
  const double expo = 100.0 * (100.0 - 62.0) / ((100.0 - 6.0) * (30.0 + 200.0));
  CHECK(theorem_rate(10.0, poly) == doctest::Approx(std::pow(10.0, -expo)).epsilon(1e-12));

  CHECK(theorem_rate_beta_threshold(2, 3) == doctest::Approx(62.0));
  CHECK_THROWS_AS(
      (void)theorem_rate(10.0, {.d = 2, .regime = Regime::Polynomial, .beta = 61.0, .k = 3}),
      std::invalid_argument);
}

TEST_CASE("variance exponents") {
  CHECK(variance_exponent({.d = 2, .regime = Regime::RangeBound}) == doctest::Approx(1.0));
  CHECK(variance_exponent({.d = 3, .regime = Regime::Exponential}) == doctest::Approx(1.0));
  CHECK(variance_exponent({.d = 2, .regime = Regime::Polynomial, .beta = 14.1, .k = 3}) ==
        doctest::Approx(0.1 / 8.1).epsilon(1e-9));
  CHECK(variance_exponent({.d = 2, .regime = Regime::Polynomial, .beta = 1e9, .k = 3}) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(variance_exponent_beta_threshold(2, 3) == doctest::Approx(14.0));
  CHECK_THROWS_AS(
      (void)variance_exponent({.d = 2, .regime = Regime::Polynomial, .beta = 13.9, .k = 3}),
      std::invalid_argument);
}

TEST_CASE("rate formulas match rational arithmetic") {
  using boost::multiprecision::cpp_rational;
  Rng rng(Rng::derive(61, 0));
  int done = 0;
  while (done < 50) {
    const int d = 1 + static_cast<int>(rng.uniform01() * 4.999);
    const int k = 3 + static_cast<int>(rng.uniform01() * 3.999);
    // beta as a rational p/q safely above both thresholds.
    const long q = 1 + static_cast<long>(rng.uniform01() * 9.999);
    const long minp =
        static_cast<long>(std::ceil(q * (15.0 * k - 14.0) * d / (k - 2.0))) + 1;
    const long p = minp + static_cast<long>(rng.uniform01() * 50 * q);
    const cpp_rational beta(p, q);
    const cpp_rational bd(static_cast<double>(p) / static_cast<double>(q));
    if (bd != beta) continue;  // keep beta exactly representable
    const double beta_d = static_cast<double>(p) / static_cast<double>(q);

    const cpp_rational num = beta * (k - 2) * (beta * (k - 2) - d * (15 * k - 14));
    const cpp_rational den =
        (k * beta - 2 * beta - d * k) * (5 * d * k + 2 * beta * k - 4 * beta);
    const cpp_rational expo = num / den;
    const RateParams pr{.d = d, .regime = Regime::Polynomial, .beta = beta_d, .k = k};
    const double got = -std::log(theorem_rate(std::numbers::e, pr));
    CHECK(got == doctest::Approx(static_cast<double>(expo)).epsilon(1e-12));

    const cpp_rational vnum = k * beta - 2 * beta - 3 * d * k + 2 * d;
    const cpp_rational vden = k * beta - 2 * beta - d * k;
    CHECK(variance_exponent(pr) ==
          doctest::Approx(static_cast<double>(cpp_rational(vnum / vden))).epsilon(1e-12));
    ++done;
  }
}
