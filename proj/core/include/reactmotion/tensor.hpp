#pragma once

#include <span>
#include <string>
#include <vector>

namespace reactmotion::diff {

/// Dense 2-D array of 64-bit reals, row-major. Column vectors are rows x 1.
/// All model state (values, gradients, parameters) uses this one type.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int rows, int cols, double fill = 0.0);

  static Tensor scalar(double v);
  static Tensor from_rows(int rows, int cols, std::vector<double> row_major);
  static Tensor column(std::span<const double> values);
  static Tensor zeros_like(const Tensor& other);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return static_cast<int>(data_.size()); }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  /// Value of a 1x1 tensor; throws otherwise.
  double item() const;

  bool same_shape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_str() const;

  void fill(double v);
  void zero() { fill(0.0); }
  /// this += s * other; shapes must match.
  void add_scaled(const Tensor& other, double s);
  double squared_norm() const;
  bool all_finite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Plain matrix product a*b; shape-checked.
Tensor matmul(const Tensor& a, const Tensor& b);

}  // namespace reactmotion::diff
