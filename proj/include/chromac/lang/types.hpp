#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "chromac/ir/shape.hpp"

namespace chromac::lang {

enum class PhysicalType {
  XYZ,
  LMS,
  sRGB,
  opRGB,
  HSV,
  LAB,
  Light,
  Reflectance,
  Scattering,
  Absorption,
  Pigment,
  Chromaticity,
  Matrix,
};

inline constexpr std::array kAllPhysicalTypes = {
    PhysicalType::XYZ,         PhysicalType::LMS,        PhysicalType::sRGB,       PhysicalType::opRGB,
    PhysicalType::HSV,         PhysicalType::LAB,        PhysicalType::Light,      PhysicalType::Reflectance,
    PhysicalType::Scattering,  PhysicalType::Absorption, PhysicalType::Pigment,    PhysicalType::Chromaticity,
    PhysicalType::Matrix,
};

[[nodiscard]] std::string_view name(PhysicalType t);
[[nodiscard]] std::optional<PhysicalType> physical_type_from_name(std::string_view s);

/// Length of the implicit trailing channel axis; nullopt for Matrix.
[[nodiscard]] std::optional<std::int64_t> channel_count(PhysicalType t);

[[nodiscard]] bool is_tristimulus(PhysicalType t);
[[nodiscard]] bool is_perceptual(PhysicalType t);
[[nodiscard]] bool is_spectral(PhysicalType t);
/// Tristimulus spaces stored with a gamma curve (sRGB, opRGB).
[[nodiscard]] bool is_gamma_encoded(PhysicalType t);
/// Types whose runtime values are nonnegative by construction of valid inputs.
[[nodiscard]] bool is_nonnegative_domain(PhysicalType t);

/// Index of channel `c` for `t` (e.g. "g" of sRGB is 1), or nullopt.
[[nodiscard]] std::optional<std::int64_t> channel_index(PhysicalType t, std::string_view c);

/// A physical type paired with a dimension (grid shape).
struct ShapedType {
  PhysicalType phys;
  Shape dims;

  /// Tensor shape after erasing the physical type: dims followed by the channel axis
  /// (Matrix keeps its dims unchanged).
  [[nodiscard]] Shape erased() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const ShapedType&, const ShapedType&) = default;
};

}  // namespace chromac::lang
