// Exact n-fold convolution of the unit triangular density as a piecewise
// polynomial with rational coefficients, used as the oracle behind
// tv_shift_exact_triangular.

#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabsim/bounds.hpp"

namespace stabsim {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using Poly = std::vector<Rat>;                      // coeffs of x^j
using BiPoly = std::vector<Poly>;                   // [i][j] -> t^i x^j
using Pieces = std::map<long, Poly>;                // left endpoint -> poly in x

void add_to(Poly& dst, const Poly& src, const Rat& scale = 1) {
  if (dst.size() < src.size()) dst.resize(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) dst[j] += scale * src[j];
}

Rat binom(unsigned n, unsigned k) {
  Rat r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// P(t) * Q(x - t) as a bivariate polynomial.
BiPoly cross_product(const Poly& p, const Poly& q) {
  BiPoly out;
  auto at = [&](std::size_t i, std::size_t j) -> Rat& {
    if (out.size() <= i) out.resize(i + 1);
    if (out[i].size() <= j) out[i].resize(j + 1);
    return out[i][j];
  };
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0) continue;
    for (std::size_t m = 0; m < q.size(); ++m) {
      if (q[m] == 0) continue;
      // q_m (x - t)^m = q_m sum_j C(m,j) x^{m-j} (-t)^j
      for (std::size_t j = 0; j <= m; ++j) {
        Rat c = p[a] * q[m] * binom(static_cast<unsigned>(m), static_cast<unsigned>(j));
        if (j % 2 == 1) c = -c;
        at(a + j, m - j) += c;
      }
    }
  }
  return out;
}

BiPoly integrate_t(const BiPoly& b) {
  BiPoly out(b.size() + 1);
  out[0] = {};
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[i + 1] = b[i];
    for (auto& c : out[i + 1]) c /= static_cast<int>(i + 1);
  }
  return out;
}

// Substitute t = x + c into a bivariate polynomial, yielding a poly in x.
Poly subst_linear(const BiPoly& b, const Rat& c) {
  Poly out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    // t^i = (x + c)^i = sum_j C(i,j) x^j c^{i-j}
    for (std::size_t j = 0; j <= i; ++j) {
      Rat cc = binom(static_cast<unsigned>(i), static_cast<unsigned>(j));
      Rat cp = 1;
      for (std::size_t e = 0; e < i - j; ++e) cp *= c;
      cc *= cp;
      if (cc == 0) continue;
      Poly shifted(b[i].size() + j, 0);
      for (std::size_t m = 0; m < b[i].size(); ++m) shifted[m + j] = b[i][m] * cc;
      add_to(out, shifted);
    }
  }
  return out;
}

// Substitute the constant t = c.
Poly subst_const(const BiPoly& b, const Rat& c) {
  Poly out;
  Rat cp = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    add_to(out, b[i], cp);
    cp *= c;
  }
  return out;
}

Pieces unit_triangle() {
  Pieces g;
  g[-1] = {1, 1};   // 1 + x on [-1, 0]
  g[0] = {1, -1};   // 1 - x on [0, 1]
  return g;
}

// Convolution of a piecewise polynomial (integer breakpoints, unit pieces)
// with the unit triangular density.
Pieces convolve_triangle(const Pieces& g) {
  const Pieces kappa = unit_triangle();
  Pieces out;
  auto acc = [&](long b, const Poly& p) {
    if (p.empty()) return;
    add_to(out[b], p);
  };
  for (const auto& [p0, P] : g) {
    for (const auto& [q0, Q] : kappa) {
      const BiPoly anti = integrate_t(cross_product(P, Q));
      // x in [p0+q0, p0+q0+1]: t from p0 to x - q0.
      {
        Poly hi = subst_linear(anti, Rat(-q0));
        Poly lo = subst_const(anti, Rat(p0));
        add_to(hi, lo, -1);
        acc(p0 + q0, hi);
      }
      // x in [p0+q0+1, p0+q0+2]: t from x - q0 - 1 to p0 + 1.
      {
        Poly hi = subst_const(anti, Rat(p0 + 1));
        Poly lo = subst_linear(anti, Rat(-q0 - 1));
        add_to(hi, lo, -1);
        acc(p0 + q0 + 1, hi);
      }
    }
  }
  return out;
}

Rat eval_antiderivative(const Poly& p, const Rat& x) {
  Rat s = 0;
  Rat xp = x;
  for (std::size_t j = 0; j < p.size(); ++j) {
    s += p[j] * xp / static_cast<int>(j + 1);
    xp *= x;
  }
  return s;
}

}  // namespace

double tv_shift_exact_triangular(double a, int n, double gamma) {
  if (a <= 0 || n < 1 || gamma < 0)
    throw std::invalid_argument("tv_shift_exact_triangular: need a>0, n>=1, gamma>=0");
  if (gamma == 0) return 0.0;
  const double gscaled = gamma / a;
  if (gscaled >= 2.0 * n) return 1.0;
  if (n > 20) return tv_shift_spectral_triangular(a, n, gamma);

  Pieces g = unit_triangle();
  for (int i = 1; i < n; ++i) g = convolve_triangle(g);

  // TV = Int_{-g/2}^{g/2} g_n(x) dx, computed exactly in rational arithmetic
  // (the double endpoint converts to an exact rational).
  const Rat hi(gscaled / 2);
  const Rat lo = -hi;
  Rat total = 0;
  for (const auto& [b, p] : g) {
    const Rat pl = std::max(Rat(b), lo);
    const Rat ph = std::min(Rat(b + 1), hi);
    if (pl >= ph) continue;
    total += eval_antiderivative(p, ph) - eval_antiderivative(p, pl);
  }
  return static_cast<double>(total);
}

}  // namespace stabsim
