#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chromac {

/// Row-major tensor shape. Every extent is >= 1 and the rank is >= 1.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::int64_t> dims);
  explicit Shape(std::vector<std::int64_t> dims);

  [[nodiscard]] std::size_t rank() const { return dims_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return dims_[i]; }
  [[nodiscard]] std::int64_t back() const { return dims_.back(); }
  [[nodiscard]] std::span<const std::int64_t> dims() const { return dims_; }
  [[nodiscard]] const std::vector<std::int64_t>& vec() const { return dims_; }
  [[nodiscard]] std::int64_t numel() const;
  [[nodiscard]] bool is_scalar() const { return dims_.size() == 1 && dims_[0] == 1; }

  /// This shape followed by `extra` (e.g. image dims followed by a channel axis).
  [[nodiscard]] Shape append(std::int64_t extra) const;
  /// Copy with leading unit axes removed; keeps at least one axis.
  [[nodiscard]] Shape strip_leading_ones() const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::int64_t> dims_;
};

/// True when `from` can be broadcast to `to`: equal shapes, a scalar `from`, or `from`
/// (with leading unit axes dropped) is a right-aligned suffix of `to`.
[[nodiscard]] bool broadcastable(const Shape& from, const Shape& to);

/// Result shape of an elementwise op on `a` and `b`, whichever direction broadcasts.
[[nodiscard]] std::optional<Shape> broadcast_shapes(const Shape& a, const Shape& b);

/// Result of matmul(lhs, rhs): lhs is [..., m, k] (or [k]), rhs is [k, n].
[[nodiscard]] std::optional<Shape> matmul_shape(const Shape& lhs, const Shape& rhs);

}  // namespace chromac
