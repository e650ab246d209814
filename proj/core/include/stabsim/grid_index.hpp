#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "stabsim/config.hpp"

namespace stabsim {

// Uniform bucket grid over the bounding box of a configuration. Supports
// expanding-ring candidate enumeration for nearest neighbor queries and
// ball queries. Cell size defaults to roughly one expected point per cell
// at unit intensity.
class GridIndex {
 public:
  explicit GridIndex(const MarkedConfiguration& cfg, double cell = 0.0)
      : cfg_(cfg), dim_(cfg.dim()) {
    const std::size_t n = cfg.size();
    lo_.assign(dim_, 0.0);
    hi_.assign(dim_, 0.0);
    if (n == 0) {
      cell_ = 1.0;
      res_.assign(dim_, 1);
      buckets_.resize(1);
      return;
    }
    for (int j = 0; j < dim_; ++j) {
      double lo = cfg.position(0)[j], hi = lo;
      for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, cfg.position(i)[j]);
        hi = std::max(hi, cfg.position(i)[j]);
      }
      lo_[j] = lo;
      hi_[j] = hi;
    }
    if (cell <= 0.0) {
      // Scale by the largest axis span so degenerate (e.g. collinear)
      // configurations still get O(n^{1/d}) cells per axis.
      double span = 0.0;
      for (int j = 0; j < dim_; ++j) span = std::max(span, hi_[j] - lo_[j]);
      cell = span > 0.0
                 ? span / (std::floor(std::pow(static_cast<double>(n), 1.0 / dim_)) + 1.0)
                 : 1.0;
    }
    cell_ = std::max(cell, 1e-12);
    res_.resize(dim_);
    std::size_t total = 1;
    for (int j = 0; j < dim_; ++j) {
      res_[j] = std::max<long>(1, static_cast<long>(std::floor((hi_[j] - lo_[j]) / cell_)) + 1);
      total *= static_cast<std::size_t>(res_[j]);
    }
    buckets_.resize(total);
    for (std::size_t i = 0; i < n; ++i) buckets_[bucket_of(cfg.position(i))].push_back(i);
  }

  double cell() const { return cell_; }

  // Appends indices of all points whose cell has max-norm distance exactly r
  // from the cell containing q (r = 0 is q's own cell). Returns false once the
  // box of radius r already covers the whole grid, i.e. larger rings are empty.
  bool ring(std::span<const double> q, long r, std::vector<std::size_t>& out) const {
    std::vector<long> c(dim_);
    for (int j = 0; j < dim_; ++j) c[j] = cell_coord(q[j], j);
    std::vector<long> it(dim_, -r);
    auto visit = [&] {
      std::size_t b = 0;
      for (int j = 0; j < dim_; ++j) {
        const long v = c[j] + it[j];
        if (v < 0 || v >= res_[j]) return;
        b = b * static_cast<std::size_t>(res_[j]) + static_cast<std::size_t>(v);
      }
      const auto& bk = buckets_[b];
      out.insert(out.end(), bk.begin(), bk.end());
    };
    if (r == 0) {
      visit();
    } else if (dim_ == 1) {
      it[0] = -r;
      visit();
      it[0] = r;
      visit();
    } else {
      // Only enumerate cells on the shell: when no leading coordinate is at
      // +-r the last coordinate must be, otherwise it sweeps the full range.
      for (;;) {
        bool outer = false;
        for (int j = 0; j + 1 < dim_; ++j)
          if (std::abs(it[j]) == r) outer = true;
        if (outer) {
          for (long v = -r; v <= r; ++v) {
            it[dim_ - 1] = v;
            visit();
          }
        } else {
          it[dim_ - 1] = -r;
          visit();
          it[dim_ - 1] = r;
          visit();
        }
        int j = dim_ - 2;
        while (j >= 0 && it[j] == r) it[j--] = -r;
        if (j < 0) break;
        ++it[j];
      }
    }
    for (int j = 0; j < dim_; ++j)
      if (c[j] - r > 0 || c[j] + r < res_[j] - 1) return true;
    return false;
  }

  // All points within Euclidean distance rad of q (possibly including a point
  // located exactly at q).
  std::vector<std::size_t> ball(std::span<const double> q, double rad) const {
    std::vector<std::size_t> out, cand;
    const long rc = static_cast<long>(std::floor(rad / cell_)) + 1;
    for (long r = 0; r <= rc; ++r)
      if (!ring(q, r, cand) && r > 0) break;
    const double r2 = rad * rad;
    for (std::size_t i : cand) {
      double d2 = 0;
      auto p = cfg_.position(i);
      for (int j = 0; j < dim_; ++j) d2 += (p[j] - q[j]) * (p[j] - q[j]);
      if (d2 <= r2) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  long cell_coord(double x, int j) const {
    long v = static_cast<long>(std::floor((x - lo_[j]) / cell_));
    return std::clamp<long>(v, 0, res_[j] - 1);
  }
  std::size_t bucket_of(std::span<const double> p) const {
    std::size_t b = 0;
    for (int j = 0; j < dim_; ++j) b = b * static_cast<std::size_t>(res_[j]) + static_cast<std::size_t>(cell_coord(p[j], j));
    return b;
  }

  const MarkedConfiguration& cfg_;
  int dim_;
  double cell_ = 1.0;
  std::vector<double> lo_, hi_;
  std::vector<long> res_;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace stabsim
