#include "reactmotion/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace reactmotion::diff {

Tensor::Tensor(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("Tensor: negative dimension");
  }
}

Tensor Tensor::scalar(double v) {
  Tensor t(1, 1);
  t.data_[0] = v;
  return t;
}

Tensor Tensor::from_rows(int rows, int cols, std::vector<double> row_major) {
  if (row_major.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("Tensor::from_rows: data size does not match shape");
  }
  Tensor t;
  t.rows_ = rows;
  t.cols_ = cols;
  t.data_ = std::move(row_major);
  return t;
}

Tensor Tensor::column(std::span<const double> values) {
  Tensor t(static_cast<int>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) t.data_[i] = values[i];
  return t;
}

Tensor Tensor::zeros_like(const Tensor& other) {
  return Tensor(other.rows_, other.cols_);
}

double Tensor::item() const {
  if (rows_ != 1 || cols_ != 1) {
    throw std::logic_error("Tensor::item: tensor is " + shape_str() + ", expected 1x1");
  }
  return data_[0];
}

std::string Tensor::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void Tensor::fill(double v) {
  for (double& x : data_) x = v;
}

void Tensor::add_scaled(const Tensor& other, double s) {
  if (!same_shape(other)) {
    throw std::logic_error("Tensor::add_scaled: shape mismatch " + shape_str() + " vs " +
                           other.shape_str());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

double Tensor::squared_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return s;
}

bool Tensor::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw std::logic_error("matmul: inner dimensions disagree, " + a.shape_str() + " * " +
                           b.shape_str());
  }
  Tensor c(a.rows(), b.cols());
  const int m = a.rows(), k = a.cols(), n = b.cols();
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double aip = a(i, p);
      if (aip == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        c(i, j) += aip * b(p, j);
      }
    }
  }
  return c;
}

}  // namespace reactmotion::diff
