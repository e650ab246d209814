#include "stabsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace stabsim {

MarkSampler MarkSampler::none() { return MarkSampler{}; }

MarkSampler MarkSampler::categorical(std::vector<double> probabilities) {
  double sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("categorical marks: probabilities must sum to 1");
  MarkSampler s;
  s.kind_ = Kind::Categorical;
  double acc = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw std::invalid_argument("categorical marks: negative probability");
    acc += p;
    s.cum_.push_back(acc);
  }
  s.cum_.back() = 1.0;
  return s;
}

MarkSampler MarkSampler::normal(double mu, double sigma) {
  MarkSampler s;
  s.kind_ = Kind::Normal;
  s.mu_ = mu;
  s.sigma_ = sigma;
  return s;
}

MarkSampler MarkSampler::categorical_normal(std::vector<double> probabilities,
                                            double mu, double sigma) {
  MarkSampler s = categorical(std::move(probabilities));
  s.kind_ = Kind::CategoricalNormal;
  s.mu_ = mu;
  s.sigma_ = sigma;
  return s;
}

Mark MarkSampler::sample(Rng& rng) const {
  auto draw_cat = [&] {
    const double u = rng.uniform01();
    return static_cast<int>(std::lower_bound(cum_.begin(), cum_.end(), u) -
                            cum_.begin());
  };
  switch (kind_) {
    case Kind::None:
      return Mark::none();
    case Kind::Categorical:
      return Mark::categorical(draw_cat());
    case Kind::Normal:
      return Mark::real_value(mu_ + sigma_ * rng.normal());
    case Kind::CategoricalNormal: {
      const int c = draw_cat();
      return Mark::cat_real(c, mu_ + sigma_ * rng.normal());
    }
  }
  return Mark::none();
}

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool near_equal(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kGeoTol) return false;
  return true;
}

}  // namespace

std::size_t MarkedConfiguration::find(std::span<const double> x) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (near_equal(position(i), x)) return i;
  return npos;
}

MarkedConfiguration MarkedConfiguration::inserted(std::span<const double> x,
                                                  const Mark& m) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument("insert: dimension mismatch");
  if (!window_.contains(x))
    throw std::domain_error("insert: position outside window");
  if (find(x) != npos)
    throw std::invalid_argument("insert: duplicate position");
  MarkedConfiguration out = *this;
  std::size_t lo = 0;
  while (lo < out.size() && lex_less(out.position(lo), x)) ++lo;
  out.pos_.insert(out.pos_.begin() + lo * dim(), x.begin(), x.end());
  out.marks_.insert(out.marks_.begin() + lo, m);
  return out;
}

MarkedConfiguration MarkedConfiguration::removed(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("remove: index out of range");
  MarkedConfiguration out = *this;
  out.pos_.erase(out.pos_.begin() + i * dim(),
                 out.pos_.begin() + (i + 1) * dim());
  out.marks_.erase(out.marks_.begin() + i);
  return out;
}

void MarkedConfiguration::push_unchecked(std::span<const double> x,
                                         const Mark& m) {
  pos_.insert(pos_.end(), x.begin(), x.end());
  marks_.push_back(m);
}

void MarkedConfiguration::sort_canonical() {
  const int d = dim();
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(position(a), position(b));
  });
  std::vector<double> np;
  np.reserve(pos_.size());
  std::vector<Mark> nm;
  nm.reserve(marks_.size());
  for (std::size_t i : idx) {
    auto p = position(i);
    np.insert(np.end(), p.begin(), p.end());
    nm.push_back(marks_[i]);
  }
  pos_ = std::move(np);
  marks_ = std::move(nm);
  (void)d;
}

void MarkedConfiguration::dedupe_exact() {
  const int d = dim();
  std::size_t out = size() ? 1 : 0;
  for (std::size_t i = 1; i < size(); ++i) {
    if (std::equal(pos_.begin() + i * d, pos_.begin() + (i + 1) * d,
                   pos_.begin() + (out - 1) * d)) {
      continue;
    }
    if (out != i) {
      std::copy(pos_.begin() + i * d, pos_.begin() + (i + 1) * d,
                pos_.begin() + out * d);
      marks_[out] = marks_[i];
    }
    ++out;
  }
  pos_.resize(out * d);
  marks_.resize(out);
}

bool MarkedConfiguration::same_points(const MarkedConfiguration& other) const {
  return dim() == other.dim() && pos_ == other.pos_ && marks_ == other.marks_;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void MarkedConfiguration::write_csv(std::ostream& os) const {
  const int d = dim();
  for (int i = 0; i < d; ++i) os << "x" << (i + 1) << ",";
  os << "mark_kind,mark_value\n";
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = position(i);
    for (double c : p) os << format_double(c) << ",";
    const Mark& m = marks_[i];
    switch (m.kind) {
      case Mark::Kind::None:
        os << "none,0";
        break;
      case Mark::Kind::Categorical:
        os << "cat," << m.cat;
        break;
      case Mark::Kind::Real:
        os << "real," << format_double(m.real);
        break;
      case Mark::Kind::CategoricalReal:
        os << "catreal," << m.cat << ":" << format_double(m.real);
        break;
    }
    os << "\n";
  }
}

}  // namespace stabsim
