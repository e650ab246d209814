#ifndef STABSIM_CONFIG_HPP_
#define STABSIM_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stabsim/rng.hpp"
#include "stabsim/window.hpp"

namespace stabsim {

// Point mark: nothing, a categorical species id, a real value, or both
// (species plus noise, as used by the timber score).
struct Mark {
  enum class Kind { None, Categorical, Real, CategoricalReal };
  Kind kind = Kind::None;
  int cat = 0;
  double real = 0.0;

  static Mark none() { return {}; }
  static Mark categorical(int c) { return {Kind::Categorical, c, 0.0}; }
  static Mark real_value(double v) { return {Kind::Real, 0, v}; }
  static Mark cat_real(int c, double v) { return {Kind::CategoricalReal, c, v}; }

  bool operator==(const Mark&) const = default;
};

// i.i.d. mark generator, independent of positions.
class MarkSampler {
 public:
  enum class Kind { None, Categorical, Normal, CategoricalNormal };

  static MarkSampler none();
  // probabilities must sum to 1 within 1e-12.
  static MarkSampler categorical(std::vector<double> probabilities);
  static MarkSampler normal(double mu, double sigma);
  static MarkSampler categorical_normal(std::vector<double> probabilities,
                                        double mu, double sigma);

  Kind kind() const { return kind_; }
  Mark sample(Rng& rng) const;

 private:
  Kind kind_ = Kind::None;
  std::vector<double> cum_;
  double mu_ = 0.0, sigma_ = 1.0;
};

// Finite marked point set in a window, kept in canonical (lexicographic by
// position) order. Immutable value type: insert/remove return copies.
class MarkedConfiguration {
 public:
  MarkedConfiguration(Window window, double lambda)
      : window_(std::move(window)), lambda_(lambda) {}

  const Window& window() const { return window_; }
  double intensity() const { return lambda_; }
  int dim() const { return window_.dim(); }
  std::size_t size() const { return marks_.size(); }
  bool empty() const { return marks_.empty(); }

  std::span<const double> position(std::size_t i) const {
    return {pos_.data() + i * dim(), static_cast<std::size_t>(dim())};
  }
  const Mark& mark(std::size_t i) const { return marks_[i]; }
  const std::vector<double>& positions_flat() const { return pos_; }

  // Index of the point at (within kGeoTol of) the given position, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(std::span<const double> x) const;

  // Palm-style addition: returns a copy with one more point, canonical order
  // preserved. Throws on duplicate position or position outside the window.
  MarkedConfiguration inserted(std::span<const double> x, const Mark& m) const;
  MarkedConfiguration removed(std::size_t i) const;

  // Appends without validation; call sort_canonical() afterwards. Used by
  // the samplers.
  void push_unchecked(std::span<const double> x, const Mark& m);
  void set_mark_unchecked(std::size_t i, const Mark& m) { marks_[i] = m; }
  void sort_canonical();
  // Drops exact-duplicate positions after sorting (probability-zero event
  // under the continuous model).
  void dedupe_exact();

  bool same_points(const MarkedConfiguration& other) const;

  // CSV: header "x1,...,xd,mark_kind,mark_value", canonical row order.
  void write_csv(std::ostream& os) const;

 private:
  Window window_;
  double lambda_;
  std::vector<double> pos_;  // size() * dim(), canonical order
  std::vector<Mark> marks_;
};

// Prints a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace stabsim

#endif  // STABSIM_CONFIG_HPP_
