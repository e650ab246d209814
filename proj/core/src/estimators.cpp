#include "stabsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>

namespace stabsim {

namespace {

double phi_cdf(double x) {
  static const boost::math::normal_distribution<double> n01;
  return boost::math::cdf(n01, x);
}

}  // namespace

double kolmogorov_distance(std::vector<double> samples, double mu, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("kolmogorov_distance: sigma must be positive");
  if (samples.empty()) throw std::invalid_argument("kolmogorov_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = phi_cdf((samples[i] - mu) / sigma);
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(i / n - f));
  }
  return d;
}

double binned_tv_estimate(const std::vector<double>& samples, double mu, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("binned_tv_estimate: sigma must be positive");
  if (samples.size() < 30)
    throw std::invalid_argument("binned_tv_estimate: need at least 30 samples");
  const std::size_t n = samples.size();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (samples[i] - mu) / sigma;
  std::sort(z.begin(), z.end());

  const double q1 = z[static_cast<std::size_t>(0.25 * (n - 1))];
  const double q3 = z[static_cast<std::size_t>(0.75 * (n - 1))];
  const double fd = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
  const double range = z.back() - z.front();

  std::size_t bins;
  double lo, hi;
  if (range <= 0 || fd <= 0) {
    // Degenerate sample: a single sliver bin around the point mass.
    bins = 1;
    const double w = std::max(fd, 1e-9);
    lo = z.front() - w / 2;
    hi = z.front() + w / 2;
  } else {
    bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(range / fd)), 20, 512);
    lo = z.front();
    hi = z.back();
  }
  const double w = (hi - lo) / bins;

  std::vector<double> emp(bins, 0.0);
  for (double v : z) {
    auto b = static_cast<std::size_t>((v - lo) / w);
    emp[std::min(b, bins - 1)] += 1.0 / n;
  }
  double tv = phi_cdf(lo) + (1.0 - phi_cdf(hi));  // normal mass outside the range
  for (std::size_t b = 0; b < bins; ++b) {
    const double nm = phi_cdf(lo + (b + 1) * w) - phi_cdf(lo + b * w);
    tv += std::abs(emp[b] - nm);
  }
  return tv / 2;
}

std::pair<double, double> loglog_slope(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw std::invalid_argument("loglog_slope: need at least 3 pairs");
  const std::size_t n = pairs.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pairs[i].first <= 0 || pairs[i].second <= 0)
      throw std::domain_error("loglog_slope: values must be positive");
    xs[i] = std::log(pairs[i].first);
    ys[i] = std::log(pairs[i].second);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw std::domain_error("loglog_slope: degenerate abscissa");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    rss += r * r;
  }
  const double se = std::sqrt(rss / (n - 2) / sxx);
  return {slope, se};
}

double poisson_gof_pvalue(const std::vector<long>& counts, double mean) {
  if (counts.size() < 2 || mean <= 0)
    throw std::invalid_argument("poisson_gof_pvalue: need >=2 counts and mean>0");
  const boost::math::poisson_distribution<double> law(mean);
  long maxv = *std::max_element(counts.begin(), counts.end());
  std::vector<double> obs(maxv + 2, 0.0), exp(maxv + 2, 0.0);
  const double n = static_cast<double>(counts.size());
  for (long c : counts) {
    if (c < 0) throw std::invalid_argument("poisson_gof_pvalue: negative count");
    obs[c] += 1.0;
  }
  for (long v = 0; v <= maxv; ++v) exp[v] = n * boost::math::pdf(law, v);
  exp[maxv + 1] = n * boost::math::cdf(boost::math::complement(law, maxv));

  // Pool adjacent cells until every expected count is at least 5.
  std::vector<double> po, pe;
  double co = 0, ce = 0;
  for (std::size_t v = 0; v < obs.size(); ++v) {
    co += obs[v];
    ce += exp[v];
    if (ce >= 5.0) {
      po.push_back(co);
      pe.push_back(ce);
      co = ce = 0;
    }
  }
  if (ce > 0 || co > 0) {
    if (po.empty()) {
      po.push_back(co);
      pe.push_back(ce);
    } else {
      po.back() += co;
      pe.back() += ce;
    }
  }
  if (po.size() < 2) return 1.0;
  double stat = 0;
  for (std::size_t i = 0; i < po.size(); ++i)
    stat += (po[i] - pe[i]) * (po[i] - pe[i]) / pe[i];
  const boost::math::chi_squared_distribution<double> chi(static_cast<double>(po.size() - 1));
  return boost::math::cdf(boost::math::complement(chi, stat));
}

}  // namespace stabsim
