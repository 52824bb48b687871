#pragma once

#include <array>

#include "chromac/color/matrices.hpp"
#include "chromac/color/spectrum.hpp"

namespace chromac::color {

/// Power-law transfer function: encoded = scale * linear^(1/gamma).
struct GammaSpec {
  double gamma;
  double scale;
};

inline constexpr GammaSpec kSrgbGamma{2.2, 255.0};
inline constexpr GammaSpec kOpRgbGamma{563.0 / 256.0, 255.0};

/// Cone responses of a light: the band-wise sum of SPD times each cone fundamental.
[[nodiscard]] Triple spd_to_lms(const Spectrum& spd);

/// (encoded / scale)^gamma. Throws InvalidInput on negative input.
[[nodiscard]] double gamma_decode(double encoded, GammaSpec g);
/// scale * linear^(1/gamma). Throws InvalidInput on negative input.
[[nodiscard]] double gamma_encode(double linear, GammaSpec g);

/// Kubelka-Munk reflectance R = 1 + K/S - sqrt((K/S)^2 + 2 K/S), band by band.
/// Throws DomainError where S is zero and InvalidInput for negative K or S.
[[nodiscard]] Spectrum km_reflectance(const Spectrum& absorption, const Spectrum& scattering);

/// Concentration-weighted average of two pigments' K and S spectra.
[[nodiscard]] Pigment km_mix(double c1, const Pigment& p1, double c2, const Pigment& p2);

/// CIELAB with the pure cube-root companding f(t) = t^(1/3) (no linear toe).
[[nodiscard]] Triple xyz_to_lab(const Triple& xyz, const Triple& whitepoint);
[[nodiscard]] Triple lab_to_xyz(const Triple& lab, const Triple& whitepoint);

/// Hexcone HSV: H in degrees [0, 360), S and V in [0, 1]. Achromatic colors get H = 0.
[[nodiscard]] Triple rgb_to_hsv(const Triple& rgb);
[[nodiscard]] Triple hsv_to_rgb(const Triple& hsv);

/// CIE xy chromaticity. Throws DomainError when X + Y + Z = 0.
[[nodiscard]] std::array<double, 2> xyz_to_chromaticity(const Triple& xyz);

/// Gamma-encoded sRGB (0..scale) to XYZ and back; the inverse clamps negative linear values to 0.
[[nodiscard]] Triple srgb_to_xyz(const Triple& encoded);
[[nodiscard]] Triple xyz_to_srgb(const Triple& xyz);
[[nodiscard]] Triple oprgb_to_xyz(const Triple& encoded);
[[nodiscard]] Triple xyz_to_oprgb(const Triple& xyz);

/// D65 daylight SPD scaled so that its luminance Y equals 1.
[[nodiscard]] const Spectrum& daylight_spd();

}  // namespace chromac::color
