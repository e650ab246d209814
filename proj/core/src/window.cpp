#include "stabsim/window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabsim {

namespace {

void check_angles(int d, const std::vector<double>& angles) {
  if (static_cast<int>(angles.size()) != d - 1)
    throw std::invalid_argument("slab: need d-1 angles");
  for (double th : angles) {
    if (!(th > 0.0 && th < std::numbers::pi / 2))
      throw std::invalid_argument("slab: angles must be in (0, pi/2)");
  }
}

}  // namespace

Window Window::cube(int d, double alpha) {
  if (d < 1) throw std::invalid_argument("window: dimension must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("window: alpha must be > 0");
  Window w;
  w.kind_ = Kind::Cube;
  w.d_ = d;
  w.alpha_ = alpha;
  w.side_ = std::pow(alpha, 1.0 / d);
  return w;
}

Window Window::slab(int d, double alpha, double r,
                    const std::vector<double>& angles) {
  if (d < 2) throw std::invalid_argument("slab: dimension must be >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("slab: alpha must be > 0");
  if (!(r > 0.0)) throw std::invalid_argument("slab: height r must be > 0");
  check_angles(d, angles);
  Window w;
  w.kind_ = Kind::Slab;
  w.d_ = d;
  w.alpha_ = alpha;
  w.r_ = r;
  w.side_ = std::pow(alpha, 1.0 / (d - 1));
  w.angles_ = angles;
  w.cots_.reserve(angles.size());
  for (double th : angles) w.cots_.push_back(1.0 / std::tan(th));
  return w;
}

double Window::volume() const {
  return kind_ == Kind::Cube ? alpha_ : alpha_ * r_;
}

double Window::slab_coordinate(std::span<const double> x) const {
  double m = x[d_ - 1];
  for (int i = 0; i + 1 < d_; ++i) m += x[i] * cots_[i];
  return m;
}

bool Window::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != d_) return false;
  if (kind_ == Kind::Cube) {
    const double h = side_ / 2 + tol;
    for (int i = 0; i < d_; ++i)
      if (x[i] < -h || x[i] > h) return false;
    return true;
  }
  for (int i = 0; i + 1 < d_; ++i)
    if (x[i] < -tol || x[i] > side_ + tol) return false;
  const double m = slab_coordinate(x);
  return m >= -tol && m <= r_ + tol;
}

double Window::diameter() const {
  if (kind_ == Kind::Cube) return side_ * std::sqrt(static_cast<double>(d_));
  // Bounding diameter of the sheared parallelepiped.
  double maxshift = 0.0;
  for (double c : cots_) maxshift += side_ * std::abs(c);
  double base2 = side_ * side_ * (d_ - 1);
  double h = r_ + maxshift;
  return std::sqrt(base2 + h * h);
}

std::vector<double> Window::corners() const {
  std::vector<double> out;
  const int n = 1 << d_;
  out.reserve(static_cast<std::size_t>(n) * d_);
  for (int mask = 0; mask < n; ++mask) {
    std::vector<double> v(d_);
    if (kind_ == Kind::Cube) {
      for (int i = 0; i < d_; ++i)
        v[i] = (mask >> i & 1) ? side_ / 2 : -side_ / 2;
    } else {
      // Corner of the sheared box mapped back by the inverse shear.
      for (int i = 0; i + 1 < d_; ++i) v[i] = (mask >> i & 1) ? side_ : 0.0;
      double m = (mask >> (d_ - 1) & 1) ? r_ : 0.0;
      v[d_ - 1] = m;
      for (int i = 0; i + 1 < d_; ++i) v[d_ - 1] -= v[i] * cots_[i];
    }
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<double> shear_transform(std::span<const double> x,
                                    const std::vector<double>& angles) {
  const int d = static_cast<int>(x.size());
  check_angles(d, angles);
  std::vector<double> y(x.begin(), x.end());
  for (int i = 0; i + 1 < d; ++i) y[d - 1] += x[i] / std::tan(angles[i]);
  return y;
}

std::vector<double> shear_inverse(std::span<const double> x,
                                  const std::vector<double>& angles) {
  const int d = static_cast<int>(x.size());
  check_angles(d, angles);
  std::vector<double> y(x.begin(), x.end());
  for (int i = 0; i + 1 < d; ++i) y[d - 1] -= x[i] / std::tan(angles[i]);
  return y;
}

}  // namespace stabsim
