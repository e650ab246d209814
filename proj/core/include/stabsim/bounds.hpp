#pragma once

#include <functional>
#include <vector>

namespace stabsim {

// Characteristic function of the symmetric triangular density of half-width a:
// 2(1 - cos(as)) / (as)^2, continuously extended to 1 at s = 0.
double triangular_cf(double a, double s);

// Upper bound for the total variation distance between the n-fold sum of
// triangular(a) variables and its shift by gamma:
// (gamma/a) * (sqrt(3/(pi n)) + 2/((2n-1) pi^{2n})).
double tv_shift_bound_triangular(double a, int n, double gamma);

// Exact total variation distance between T_n and T_n + gamma, where T_n is
// the n-fold sum of independent triangular(a) variables. For n <= 20 the
// convolution density is built as an exact piecewise polynomial with rational
// coefficients; beyond that a spectral quadrature of the inversion integral
// is used.
double tv_shift_exact_triangular(double a, int n, double gamma);

// Spectral form of the same quantity, (1/pi) Int_0^inf 2 sin(s gamma/2)/s *
// cf(s)^n ds; exposed for cross-checking the piecewise polynomial oracle.
double tv_shift_spectral_triangular(double a, int n, double gamma);

// Triangular minorant of a tabulated density: u is the argmax node, v the
// largest half-width (a multiple of the grid step) on which the density stays
// above half its peak, and theta * triangular_{a}(x - u) <= f(x) with a = v,
// theta = v * f(u)/2.
struct Minorant {
  double u;      // center
  double a;      // half-width of the triangular kernel
  double theta;  // mass of the minorant component
  double b;      // plateau level f(u)/2
};
Minorant triangular_minorant(const std::vector<double>& values, double x0, double dx);

// Exact total variation distance between N(mu1, s1^2) and N(mu2, s2^2):
// closed form in the equal-variance and equal-mean cases, adaptive quadrature
// of |f1 - f2|/2 otherwise.
double normal_tv_exact(double mu1, double s1, double mu2, double s2);

// sqrt(2/pi) * (|mu1-mu2| / (2 max(s1,s2)) + max(s1,s2)/min(s1,s2) - 1).
double normal_tv_bound(double mu1, double s1, double mu2, double s2);

// Stabilization radius tail bounds for unit-rate constructions, as functions
// of the trigger constant c (0.116 by default). Clamped to [0,1] on request.
double knn_radius_tail_bound(double lambda, int k, double t, bool clamp = true,
                             double c = 0.116);
double voronoi_radius_tail_bound(double lambda, double t, bool clamp = true,
                                 double c = 0.116);

// Total variation cost of trimming at radius r: alpha * lambda * tail(r).
double trimming_bound(double alpha, double lambda,
                      const std::function<double(double)>& tail, double r,
                      bool clamp = true);

enum class Regime { RangeBound, Exponential, Polynomial };

struct RateParams {
  int d = 2;
  Regime regime = Regime::RangeBound;
  double beta = 0.0;  // polynomial stabilization order
  int k = 3;          // moment order
};

// Normal approximation rate at window volume alpha: alpha^{-1/2} in the
// range-bound regime, alpha^{-1/2} ln(alpha)^{5d/2} in the exponential
// regime, and alpha^{-e} with
// e = beta(k-2)[beta(k-2) - d(15k-14)] / ((k beta - 2 beta - d k)(5 d k + 2 beta k - 4 beta))
// in the polynomial regime.
double theorem_rate(double alpha, const RateParams& p);

// Growth exponent of Var(W) in alpha: 1 in the range-bound and exponential
// regimes, (k beta - 2 beta - 3 d k + 2 d)/(k beta - 2 beta - d k) in the
// polynomial regime.
double variance_exponent(const RateParams& p);

// Regime thresholds on beta for the polynomial formulas above.
double theorem_rate_beta_threshold(int d, int k);
double variance_exponent_beta_threshold(int d, int k);

}  // namespace stabsim
