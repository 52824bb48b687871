#include "chromac/ir/shape.hpp"

#include <algorithm>
#include <utility>

#include "chromac/error.hpp"

namespace chromac {

Shape::Shape(std::initializer_list<std::int64_t> dims) : Shape(std::vector<std::int64_t>(dims)) {}

Shape::Shape(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("shape must have at least one axis");
  for (auto d : dims_) {
    if (d < 1) throw ShapeError("shape extents must be positive, got " + str());
  }
}

std::int64_t Shape::numel() const {
  std::int64_t n = 1;
  for (auto d : dims_) n *= d;
  return n;
}

Shape Shape::append(std::int64_t extra) const {
  auto dims = dims_;
  dims.push_back(extra);
  return Shape(std::move(dims));
}

Shape Shape::strip_leading_ones() const {
  std::size_t first = 0;
  while (first + 1 < dims_.size() && dims_[first] == 1) ++first;
  return Shape(std::vector<std::int64_t>(dims_.begin() + static_cast<std::ptrdiff_t>(first), dims_.end()));
}

std::string Shape::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims_[i]);
  }
  return s + "]";
}

bool broadcastable(const Shape& from, const Shape& to) {
  if (from == to || from.numel() == 1) return true;
  const Shape core = from.strip_leading_ones();
  if (core.rank() > to.rank()) return false;
  return std::equal(core.dims().rbegin(), core.dims().rend(), to.dims().rbegin());
}

std::optional<Shape> broadcast_shapes(const Shape& a, const Shape& b) {
  // Prefer the higher-rank operand so [1] op [1,1] still yields the larger shape.
  if (broadcastable(a, b) && (b.rank() >= a.rank())) return b;
  if (broadcastable(b, a)) return a;
  if (broadcastable(a, b)) return b;
  return std::nullopt;
}

std::optional<Shape> matmul_shape(const Shape& lhs, const Shape& rhs) {
  if (rhs.rank() != 2) return std::nullopt;
  const auto k = rhs[0];
  const auto n = rhs[1];
  if (lhs.back() != k) return std::nullopt;
  auto dims = lhs.vec();
  dims.back() = n;
  return Shape(std::move(dims));
}

}  // namespace chromac
