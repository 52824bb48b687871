#include "chromac/lang/types.hpp"

#include <algorithm>

namespace chromac::lang {

std::string_view name(PhysicalType t) {
  switch (t) {
    case PhysicalType::XYZ: return "XYZ";
    case PhysicalType::LMS: return "LMS";
    case PhysicalType::sRGB: return "sRGB";
    case PhysicalType::opRGB: return "opRGB";
    case PhysicalType::HSV: return "HSV";
    case PhysicalType::LAB: return "LAB";
    case PhysicalType::Light: return "Light";
    case PhysicalType::Reflectance: return "Reflectance";
    case PhysicalType::Scattering: return "Scattering";
    case PhysicalType::Absorption: return "Absorption";
    case PhysicalType::Pigment: return "Pigment";
    case PhysicalType::Chromaticity: return "Chromaticity";
    case PhysicalType::Matrix: return "Matrix";
  }
  return "?";
}

std::optional<PhysicalType> physical_type_from_name(std::string_view s) {
  for (auto t : kAllPhysicalTypes) {
    if (name(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<std::int64_t> channel_count(PhysicalType t) {
  switch (t) {
    case PhysicalType::XYZ:
    case PhysicalType::LMS:
    case PhysicalType::sRGB:
    case PhysicalType::opRGB:
    case PhysicalType::HSV:
    case PhysicalType::LAB: return 3;
    case PhysicalType::Light:
    case PhysicalType::Reflectance:
    case PhysicalType::Scattering:
    case PhysicalType::Absorption: return 89;
    case PhysicalType::Pigment: return 178;
    case PhysicalType::Chromaticity: return 2;
    case PhysicalType::Matrix: return std::nullopt;
  }
  return std::nullopt;
}

bool is_tristimulus(PhysicalType t) {
  return t == PhysicalType::XYZ || t == PhysicalType::LMS || t == PhysicalType::sRGB || t == PhysicalType::opRGB;
}

bool is_perceptual(PhysicalType t) { return t == PhysicalType::HSV || t == PhysicalType::LAB; }

bool is_spectral(PhysicalType t) {
  return t == PhysicalType::Light || t == PhysicalType::Reflectance || t == PhysicalType::Scattering ||
         t == PhysicalType::Absorption || t == PhysicalType::Pigment;
}

bool is_gamma_encoded(PhysicalType t) { return t == PhysicalType::sRGB || t == PhysicalType::opRGB; }

bool is_nonnegative_domain(PhysicalType t) { return t != PhysicalType::LAB && t != PhysicalType::Matrix; }

std::optional<std::int64_t> channel_index(PhysicalType t, std::string_view c) {
  static constexpr std::array<std::string_view, 3> kXyz{"x", "y", "z"};
  static constexpr std::array<std::string_view, 3> kLms{"l", "m", "s"};
  static constexpr std::array<std::string_view, 3> kRgb{"r", "g", "b"};
  static constexpr std::array<std::string_view, 3> kHsv{"h", "s", "v"};
  static constexpr std::array<std::string_view, 3> kLab{"L", "a", "b"};
  auto find = [&](auto const& names) -> std::optional<std::int64_t> {
    auto it = std::find(names.begin(), names.end(), c);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::int64_t>(it - names.begin());
  };
  switch (t) {
    case PhysicalType::XYZ: return find(kXyz);
    case PhysicalType::LMS: return find(kLms);
    case PhysicalType::sRGB:
    case PhysicalType::opRGB: return find(kRgb);
    case PhysicalType::HSV: return find(kHsv);
    case PhysicalType::LAB: return find(kLab);
    case PhysicalType::Chromaticity: return find(std::array<std::string_view, 2>{"x", "y"});
    default: return std::nullopt;
  }
}

Shape ShapedType::erased() const {
  if (auto c = channel_count(phys)) return dims.append(*c);
  return dims;
}

std::string ShapedType::str() const { return std::string(name(phys)) + dims.str(); }

}  // namespace chromac::lang
