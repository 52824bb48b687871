#pragma once

#include <array>

#include "chromac/color/spectrum.hpp"

namespace chromac::color {

using Triple = std::array<double, 3>;
/// 3x3 matrix acting on column vectors: out = m * in.
using Mat3 = std::array<std::array<double, 3>, 3>;

[[nodiscard]] Triple apply(const Mat3& m, const Triple& v);
[[nodiscard]] Mat3 multiply(const Mat3& a, const Mat3& b);
[[nodiscard]] Mat3 inverse(const Mat3& m);
[[nodiscard]] Mat3 transpose(const Mat3& m);
[[nodiscard]] Mat3 identity3();

/// The standard constant matrices used by casts between color spaces.
struct ConstantMatrices {
  /// Cone fundamentals, one row per band: SPD (row) x cone_fundamentals = LMS.
  std::array<Triple, kBands> cone_fundamentals;
  Mat3 lms_to_xyz;    // CIE 2006 2-degree, from Stockman-Sharpe fundamentals
  Mat3 xyz_to_lms;
  Mat3 xyz_to_srgb;   // linear sRGB, IEC 61966-2-1 primaries
  Mat3 srgb_to_xyz;
  Mat3 xyz_to_oprgb;  // linear opRGB, IEC 61966-2-5 primaries
  Mat3 oprgb_to_xyz;
  Triple whitepoint;  // D65, Y = 1
};

/// Process-wide immutable instance.
[[nodiscard]] const ConstantMatrices& constants();

}  // namespace chromac::color
