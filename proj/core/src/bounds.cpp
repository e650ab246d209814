#include "stabsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stabsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v, bool clamp) { return clamp ? std::clamp(v, 0.0, 1.0) : v; }

double phi_cdf(double x) {
  static const boost::math::normal_distribution<double> n01;
  return boost::math::cdf(n01, x);
}

}  // namespace

double triangular_cf(double a, double s) {
  if (a <= 0) throw std::invalid_argument("triangular_cf: a must be positive");
  const double as = a * s;
  if (std::abs(as) < 1e-8) return 1.0 - as * as / 12.0;
  return 2.0 * (1.0 - std::cos(as)) / (as * as);
}

double tv_shift_bound_triangular(double a, int n, double gamma) {
  if (a <= 0 || n < 1 || gamma < 0)
    throw std::invalid_argument("tv_shift_bound_triangular: need a>0, n>=1, gamma>=0");
  return (gamma / a) * (std::sqrt(3.0 / (kPi * n)) +
                        2.0 / ((2.0 * n - 1.0) * std::pow(kPi, 2 * n)));
}

double tv_shift_spectral_triangular(double a, int n, double gamma) {
  if (a <= 0 || n < 1 || gamma < 0)
    throw std::invalid_argument("tv_shift_spectral_triangular: need a>0, n>=1, gamma>=0");
  if (gamma == 0) return 0.0;
  if (gamma >= 2.0 * n * a) return 1.0;
  // TV = G(gamma/2) - G(-gamma/2) with G the CDF of the n-fold sum; by the
  // inversion formula for real even characteristic functions,
  // G(b) - G(-b) = (1/pi) Int_0^inf 2 sin(s b)/s cf(s)^n ds.
  const double b = gamma / 2;
  auto integrand = [&](double s) {
    if (s == 0) return 2.0 * b / kPi;
    return 2.0 * std::sin(s * b) / s * std::pow(triangular_cf(a, s), n) / kPi;
  };
  // The integrand decays like s^{-2n-1}; integrate over a generous window.
  const double cut = 200.0 / a;
  double total = 0;
  const int segments = 64;
  for (int i = 0; i < segments; ++i) {
    const double lo = cut * i / segments, hi = cut * (i + 1) / segments;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 10, 1e-13);
  }
  return total;
}

Minorant triangular_minorant(const std::vector<double>& values, double x0, double dx) {
  if (values.empty() || dx <= 0)
    throw std::invalid_argument("triangular_minorant: empty grid or bad step");
  for (double v : values)
    if (v < 0) throw std::invalid_argument("triangular_minorant: negative density value");
  const auto it = std::max_element(values.begin(), values.end());
  if (*it <= 0) throw std::domain_error("triangular_minorant: density is identically zero");
  // Center the mode inside its tie plateau so flat stretches get a symmetric
  // half-width instead of an edge-pinned one.
  const std::size_t i0 = static_cast<std::size_t>(it - values.begin());
  std::size_t i1 = i0;
  while (i1 + 1 < values.size() && values[i1 + 1] == *it) ++i1;
  const std::size_t iu = (i0 + i1) / 2;
  const double b = *it / 2;

  // Largest half-width (in grid steps) keeping the density above b.
  std::size_t m = 0;
  for (std::size_t step = 1;; ++step) {
    if (iu < step || iu + step >= values.size()) break;
    bool ok = true;
    for (std::size_t i = iu - step; i <= iu + step && ok; ++i) ok = values[i] >= b;
    if (!ok) break;
    m = step;
  }
  if (m == 0)
    throw std::domain_error("triangular_minorant: no plateau around the mode at grid scale");
  const double v = m * dx;
  return {x0 + iu * dx, v, v * b, b};
}

double normal_tv_exact(double mu1, double s1, double mu2, double s2) {
  if (s1 <= 0 || s2 <= 0)
    throw std::invalid_argument("normal_tv_exact: standard deviations must be positive");
  if (mu1 == mu2 && s1 == s2) return 0.0;
  if (s1 == s2) {
    const double m = std::abs(mu1 - mu2) / s1;
    return phi_cdf(m / 2) - phi_cdf(-m / 2);
  }
  if (mu1 == mu2) {
    // Densities cross at +-x_c with x_c = s_min * sqrt(2 ln(s) s^2/(s^2-1)),
    // s the standard deviation ratio > 1.
    const double smin = std::min(s1, s2), smax = std::max(s1, s2);
    const double s = smax / smin;
    const double xc = smin * std::sqrt(2.0 * std::log(s) * s * s / (s * s - 1.0));
    return 2.0 * (phi_cdf(xc / smin) - phi_cdf(xc / smax));
  }
  boost::math::normal_distribution<double> f1(mu1, s1), f2(mu2, s2);
  auto integrand = [&](double x) {
    return 0.5 * std::abs(boost::math::pdf(f1, x) - boost::math::pdf(f2, x));
  };
  const double lo = std::min(mu1 - 12 * s1, mu2 - 12 * s2);
  const double hi = std::max(mu1 + 12 * s1, mu2 + 12 * s2);
  double total = 0;
  const int segments = 32;
  for (int i = 0; i < segments; ++i) {
    const double a = lo + (hi - lo) * i / segments;
    const double b = lo + (hi - lo) * (i + 1) / segments;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, a, b, 12, 1e-12);
  }
  return total;
}

double normal_tv_bound(double mu1, double s1, double mu2, double s2) {
  if (s1 <= 0 || s2 <= 0)
    throw std::invalid_argument("normal_tv_bound: standard deviations must be positive");
  const double smax = std::max(s1, s2), smin = std::min(s1, s2);
  return std::sqrt(2.0 / kPi) * (std::abs(mu1 - mu2) / (2.0 * smax) + smax / smin - 1.0);
}

double knn_radius_tail_bound(double lambda, int k, double t, bool clamp, double c) {
  if (lambda <= 0 || k < 1 || t < 0)
    throw std::invalid_argument("knn_radius_tail_bound: need lambda>0, k>=1, t>=0");
  const double m = c * lambda * (t / 3) * (t / 3);
  double s = 0, term = 1;
  for (int i = 0; i <= k; ++i) {
    s += term;
    term *= m / (i + 1);
  }
  return clamp01(6.0 * std::exp(-m) * s, clamp);
}

double voronoi_radius_tail_bound(double lambda, double t, bool clamp, double c) {
  if (lambda <= 0 || t < 0)
    throw std::invalid_argument("voronoi_radius_tail_bound: need lambda>0, t>=0");
  const double m = c * lambda * (t / 3) * (t / 3);
  return clamp01(6.0 * std::exp(-m), clamp);
}

double trimming_bound(double alpha, double lambda,
                      const std::function<double(double)>& tail, double r, bool clamp) {
  if (alpha <= 0 || lambda <= 0)
    throw std::invalid_argument("trimming_bound: need alpha>0, lambda>0");
  return clamp01(alpha * lambda * tail(r), clamp);
}

double theorem_rate_beta_threshold(int d, int k) {
  if (d < 1 || k < 3) throw std::invalid_argument("theorem_rate: need d>=1, k>=3");
  return static_cast<double>(15 * k - 14) * d / (k - 2);
}

double variance_exponent_beta_threshold(int d, int k) {
  if (d < 1 || k < 3) throw std::invalid_argument("variance_exponent: need d>=1, k>=3");
  return static_cast<double>(3 * k - 2) * d / (k - 2);
}

double theorem_rate(double alpha, const RateParams& p) {
  if (alpha <= 1) throw std::invalid_argument("theorem_rate: alpha must exceed 1");
  switch (p.regime) {
    case Regime::RangeBound:
      return std::pow(alpha, -0.5);
    case Regime::Exponential:
      return std::pow(alpha, -0.5) * std::pow(std::log(alpha), 2.5 * p.d);
    case Regime::Polynomial: {
      const double beta = p.beta, d = p.d, k = p.k;
      if (beta <= theorem_rate_beta_threshold(p.d, p.k))
        throw std::invalid_argument("theorem_rate: beta below the polynomial threshold");
      const double num = beta * (k - 2) * (beta * (k - 2) - d * (15 * k - 14));
      const double den = (k * beta - 2 * beta - d * k) * (5 * d * k + 2 * beta * k - 4 * beta);
      return std::pow(alpha, -num / den);
    }
  }
  throw std::logic_error("theorem_rate: unknown regime");
}

double variance_exponent(const RateParams& p) {
  switch (p.regime) {
    case Regime::RangeBound:
    case Regime::Exponential:
      return 1.0;
    case Regime::Polynomial: {
      const double beta = p.beta, d = p.d, k = p.k;
      if (beta <= variance_exponent_beta_threshold(p.d, p.k))
        throw std::invalid_argument("variance_exponent: beta below the polynomial threshold");
      return (k * beta - 2 * beta - 3 * d * k + 2 * d) / (k * beta - 2 * beta - d * k);
    }
  }
  throw std::logic_error("variance_exponent: unknown regime");
}

}  // namespace stabsim
