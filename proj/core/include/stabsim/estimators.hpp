#pragma once

#include <utility>
#include <vector>

namespace stabsim {

// Exact sup distance between the empirical CDF of the samples and the
// N(mu, sigma^2) CDF, evaluated at both one-sided limits of each order
// statistic.
double kolmogorov_distance(std::vector<double> samples, double mu, double sigma);

// Histogram proxy for the total variation distance between the sample law and
// N(mu, sigma^2): half the summed absolute mass differences over a common
// binning of the standardized samples, Freedman-Diaconis width clamped to
// [20, 512] bins, out-of-range normal mass included. This is a smoothed
// surrogate, not the true TV (which is 1 against any finite sample).
double binned_tv_estimate(const std::vector<double>& samples, double mu, double sigma);

// Least squares slope of log(y) against log(x) with its standard error.
std::pair<double, double> loglog_slope(const std::vector<std::pair<double, double>>& pairs);

// Chi-square goodness of fit p-value for integer counts against a Poisson
// law with the given mean; cells with small expectation are pooled.
double poisson_gof_pvalue(const std::vector<long>& counts, double mean);

}  // namespace stabsim
