#ifndef STABSIM_WINDOW_HPP_
#define STABSIM_WINDOW_HPP_

#include <span>
#include <vector>

namespace stabsim {

// Geometric tolerance for membership / duplicate tests, in window side units.
inline constexpr double kGeoTol = 1e-9;

// Observation window: either the cube of volume alpha centered at the
// origin, or the slab between two parallel hyperplanes with base
// [0, alpha^{1/(d-1)}]^{d-1} and x_d + sum_i x_i*cot(theta_i) in [0, r].
class Window {
 public:
  enum class Kind { Cube, Slab };

  static Window cube(int d, double alpha);
  static Window slab(int d, double alpha, double r,
                     const std::vector<double>& angles);

  Kind kind() const { return kind_; }
  int dim() const { return d_; }
  double alpha() const { return alpha_; }
  double slab_height() const { return r_; }
  const std::vector<double>& angles() const { return angles_; }

  // Cube side alpha^{1/d}; for slabs, the base side alpha^{1/(d-1)}.
  double side() const { return side_; }
  double volume() const;
  double diameter() const;

  bool contains(std::span<const double> x, double tol = kGeoTol) const;

  // Position of x along the slab normal direction, i.e. the value
  // x_d + sum_i x_i*cot(theta_i); must be in [0, r] for slab members.
  double slab_coordinate(std::span<const double> x) const;

  // Corner list (2^d points, flattened row-major) of the bounding cube;
  // for slabs, corners of the parallelepiped.
  std::vector<double> corners() const;

 private:
  Window() = default;
  Kind kind_ = Kind::Cube;
  int d_ = 0;
  double alpha_ = 0.0;
  double side_ = 0.0;
  double r_ = 0.0;
  std::vector<double> angles_;  // theta_1..theta_{d-1}, slab only
  std::vector<double> cots_;
};

// h'(x) = x + (0,...,0, sum_i x_i*cot(theta_i)). Bijective on R^d.
std::vector<double> shear_transform(std::span<const double> x,
                                    const std::vector<double>& angles);
std::vector<double> shear_inverse(std::span<const double> x,
                                  const std::vector<double>& angles);

}  // namespace stabsim

#endif  // STABSIM_WINDOW_HPP_
