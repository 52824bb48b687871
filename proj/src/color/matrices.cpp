#include "chromac/color/matrices.hpp"

#include <cmath>

#include "chromac/error.hpp"

namespace chromac::color {

Triple apply(const Mat3& m, const Triple& v) {
  Triple out{};
  for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
  return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c];
  return out;
}

Mat3 inverse(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::abs(det) < 1e-300) throw DomainError("matrix is singular");
  Mat3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

Mat3 transpose(const Mat3& m) {
  Mat3 t{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t[r][c] = m[c][r];
  return t;
}

Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

namespace {

ConstantMatrices build() {
  ConstantMatrices k{};
  for (std::size_t i = 0; i < kBands; ++i) k.cone_fundamentals[i] = tables::kConeFundamentals2Deg[i];

  k.lms_to_xyz = Mat3{{{1.94735469, -1.41445123, 0.36476327},
                       {0.68990272, 0.34832189, 0.0},
                       {0.0, 0.0, 1.93485343}}};
  k.xyz_to_lms = inverse(k.lms_to_xyz);

  k.srgb_to_xyz = Mat3{{{0.4124, 0.3576, 0.1805},
                        {0.2126, 0.7152, 0.0722},
                        {0.0193, 0.1192, 0.9505}}};
  k.xyz_to_srgb = inverse(k.srgb_to_xyz);

  k.oprgb_to_xyz = Mat3{{{0.57667, 0.18556, 0.18823},
                         {0.29734, 0.62736, 0.07529},
                         {0.02703, 0.07069, 0.99134}}};
  k.xyz_to_oprgb = inverse(k.oprgb_to_xyz);

  k.whitepoint = Triple{0.95047, 1.0, 1.08883};
  return k;
}

}  // namespace

const ConstantMatrices& constants() {
  static const ConstantMatrices k = build();
  return k;
}

}  // namespace chromac::color
