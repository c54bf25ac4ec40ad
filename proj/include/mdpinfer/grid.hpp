#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace mdpinfer {

/// Dense row-major table of doubles. State/action spaces here are page
/// counts, so dense storage is the simplest thing that works.
class Grid2 {
 public:
  Grid2() = default;
  Grid2(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, fill) {}

  double& operator()(int r, int c) { return v_[idx(r, c)]; }
  double operator()(int r, int c) const { return v_[idx(r, c)]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  friend bool operator==(const Grid2&, const Grid2&) = default;

 private:
  std::size_t idx(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> v_;
};

/// Dense 3-way table, row-major over (d0, d1, d2).
class Grid3 {
 public:
  Grid3() = default;
  Grid3(int d0, int d1, int d2, double fill = 0.0)
      : d0_(d0), d1_(d1), d2_(d2),
        v_(static_cast<std::size_t>(d0) * d1 * d2, fill) {}

  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  std::size_t idx(int i, int j, int k) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return (static_cast<std::size_t>(i) * d1_ + j) * d2_ + k;
  }
  int d0_ = 0;
  int d1_ = 0;
  int d2_ = 0;
  std::vector<double> v_;
};

}  // namespace mdpinfer
