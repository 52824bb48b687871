#pragma once

#include <span>
#include <string>
#include <vector>

#include "chromac/ir/shape.hpp"

namespace chromac {

/// Dense row-major float64 tensor. The value type of the interpreter.
class Tensor {
 public:
  Tensor() : Tensor(Shape{1}) {}
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  static Tensor scalar(double v) { return Tensor(Shape{1}, std::vector<double>{v}); }
  static Tensor vector(std::vector<double> v);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  [[nodiscard]] const Shape& shape() const { return shape_; }
  [[nodiscard]] std::size_t size() const { return data_.size(); }
  [[nodiscard]] std::span<const double> data() const { return data_; }
  [[nodiscard]] std::span<double> data() { return data_; }
  [[nodiscard]] double operator[](std::size_t i) const { return data_[i]; }
  [[nodiscard]] double& operator[](std::size_t i) { return data_[i]; }

  /// Element at a full multi-index.
  [[nodiscard]] double at(std::span<const std::int64_t> index) const;

  [[nodiscard]] bool all_finite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

/// Largest |a-b| / max(1, |b|) over all elements; shapes must agree.
[[nodiscard]] double max_relative_error(const Tensor& a, const Tensor& b);

}  // namespace chromac
