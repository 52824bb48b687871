#include "chromac/runtime/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "chromac/error.hpp"

namespace chromac {

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(static_cast<std::size_t>(shape_.numel()), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != shape_.numel()) {
    throw ShapeError("tensor payload has " + std::to_string(data_.size()) + " values but shape " + shape_.str() +
                     " needs " + std::to_string(shape_.numel()));
  }
}

Tensor Tensor::vector(std::vector<double> v) {
  Shape s{static_cast<std::int64_t>(v.size())};
  return Tensor(std::move(s), std::move(v));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major) {
  return Tensor(Shape{static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols)}, std::move(row_major));
}

double Tensor::at(std::span<const std::int64_t> index) const {
  if (index.size() != shape_.rank()) throw ShapeError("index rank does not match tensor rank");
  std::int64_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] < 0 || index[i] >= shape_[i]) throw ShapeError("index out of bounds");
    flat = flat * shape_[i] + index[i];
  }
  return data_[static_cast<std::size_t>(flat)];
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double max_relative_error(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw ShapeError("cannot compare tensors of shape " + a.shape().str() + " and " + b.shape().str());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

}  // namespace chromac
