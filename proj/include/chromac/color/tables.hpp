#pragma once

#include <array>

namespace chromac::color::tables {

inline constexpr std::size_t kBands = 89;

extern const std::array<std::array<double, 3>, kBands> kConeFundamentals2Deg;
extern const std::array<double, kBands> kD65RelativeSpd;

}  // namespace chromac::color::tables
