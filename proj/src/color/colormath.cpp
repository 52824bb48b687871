#include "chromac/color/colormath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chromac/error.hpp"

namespace chromac::color {

namespace {

double floor_mod(double x, double m) { return x - m * std::floor(x / m); }

void require_nonnegative(const Triple& v, const char* what) {
  for (double c : v) {
    if (!(c >= 0.0)) throw InvalidInput(std::string(what) + " components must be nonnegative");
  }
}

Triple decode3(const Triple& encoded, GammaSpec g) {
  return {gamma_decode(encoded[0], g), gamma_decode(encoded[1], g), gamma_decode(encoded[2], g)};
}

Triple encode3(const Triple& linear, GammaSpec g) {
  return {gamma_encode(std::max(linear[0], 0.0), g), gamma_encode(std::max(linear[1], 0.0), g),
          gamma_encode(std::max(linear[2], 0.0), g)};
}

}  // namespace

Triple spd_to_lms(const Spectrum& spd) {
  const auto& cf = constants().cone_fundamentals;
  Triple lms{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < kBands; ++i) {
    for (int c = 0; c < 3; ++c) lms[c] += spd[i] * cf[i][c];
  }
  return lms;
}

double gamma_decode(double encoded, GammaSpec g) {
  if (!(encoded >= 0.0)) throw InvalidInput("gamma_decode: encoded value must be nonnegative");
  return std::pow(encoded / g.scale, g.gamma);
}

double gamma_encode(double linear, GammaSpec g) {
  if (!(linear >= 0.0)) throw InvalidInput("gamma_encode: linear value must be nonnegative");
  return g.scale * std::pow(linear, 1.0 / g.gamma);
}

Spectrum km_reflectance(const Spectrum& absorption, const Spectrum& scattering) {
  std::array<double, kBands> r{};
  for (std::size_t i = 0; i < kBands; ++i) {
    const double k = absorption[i];
    const double s = scattering[i];
    if (k < 0.0 || s < 0.0) {
      throw InvalidInput("Kubelka-Munk spectra must be nonnegative (band " + std::to_string(band_wavelength(i)) +
                         " nm)");
    }
    if (s == 0.0) throw DomainError("scattering is zero at " + std::to_string(band_wavelength(i)) + " nm");
    const double ks = k / s;
    r[i] = 1.0 + ks - std::sqrt(ks * ks + 2.0 * ks);
  }
  return Spectrum(r);
}

Pigment km_mix(double c1, const Pigment& p1, double c2, const Pigment& p2) {
  if (c1 < 0.0 || c2 < 0.0) throw InvalidInput("pigment concentrations must be nonnegative");
  const double total = c1 + c2;
  if (!(total > 0.0)) throw InvalidInput("at least one pigment concentration must be positive");
  auto blend = [&](const Spectrum& a, const Spectrum& b) {
    std::array<double, kBands> out{};
    for (std::size_t i = 0; i < kBands; ++i) out[i] = (c1 * a[i] + c2 * b[i]) / total;
    return Spectrum(out);
  };
  return Pigment{blend(p1.absorption, p2.absorption), blend(p1.scattering, p2.scattering)};
}

Triple xyz_to_lab(const Triple& xyz, const Triple& whitepoint) {
  require_nonnegative(xyz, "XYZ");
  for (double w : whitepoint) {
    if (!(w > 0.0)) throw InvalidInput("whitepoint components must be positive");
  }
  const double fx = std::cbrt(xyz[0] / whitepoint[0]);
  const double fy = std::cbrt(xyz[1] / whitepoint[1]);
  const double fz = std::cbrt(xyz[2] / whitepoint[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Triple lab_to_xyz(const Triple& lab, const Triple& whitepoint) {
  const double fy = (lab[0] + 16.0) / 116.0;
  const double fx = fy + lab[1] / 500.0;
  const double fz = fy - lab[2] / 200.0;
  return {whitepoint[0] * fx * fx * fx, whitepoint[1] * fy * fy * fy, whitepoint[2] * fz * fz * fz};
}

Triple rgb_to_hsv(const Triple& rgb) {
  for (double c : rgb) {
    if (!(c >= 0.0 && c <= 1.0)) throw InvalidInput("rgb_to_hsv: components must lie in [0, 1]");
  }
  const auto [r, g, b] = rgb;
  const double v = std::max({r, g, b});
  const double chroma = v - std::min({r, g, b});
  const double s = v > 0.0 ? chroma / v : 0.0;
  double h = 0.0;
  if (chroma > 0.0) {
    if (r == v) {
      h = floor_mod((g - b) / chroma, 6.0);
    } else if (g == v) {
      h = (b - r) / chroma + 2.0;
    } else {
      h = (r - g) / chroma + 4.0;
    }
  }
  return {floor_mod(60.0 * h, 360.0), s, v};
}

Triple hsv_to_rgb(const Triple& hsv) {
  const auto [h, s, v] = hsv;
  if (!(h >= 0.0 && h < 360.0)) throw InvalidInput("hsv_to_rgb: hue must lie in [0, 360)");
  if (!(s >= 0.0 && s <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw InvalidInput("hsv_to_rgb: saturation and value must lie in [0, 1]");
  }
  auto channel = [&](double n) {
    const double k = floor_mod(n + h / 60.0, 6.0);
    return v - v * s * std::max(0.0, std::min({k, 4.0 - k, 1.0}));
  };
  return {channel(5.0), channel(3.0), channel(1.0)};
}

std::array<double, 2> xyz_to_chromaticity(const Triple& xyz) {
  const double sum = xyz[0] + xyz[1] + xyz[2];
  if (sum == 0.0) throw DomainError("chromaticity is undefined for X + Y + Z = 0");
  return {xyz[0] / sum, xyz[1] / sum};
}

Triple srgb_to_xyz(const Triple& encoded) { return color::apply(constants().srgb_to_xyz, decode3(encoded, kSrgbGamma)); }

Triple xyz_to_srgb(const Triple& xyz) { return encode3(color::apply(constants().xyz_to_srgb, xyz), kSrgbGamma); }

Triple oprgb_to_xyz(const Triple& encoded) {
  return color::apply(constants().oprgb_to_xyz, decode3(encoded, kOpRgbGamma));
}

Triple xyz_to_oprgb(const Triple& xyz) { return encode3(color::apply(constants().xyz_to_oprgb, xyz), kOpRgbGamma); }

const Spectrum& daylight_spd() {
  static const Spectrum spd = [] {
    std::array<double, kBands> raw = tables::kD65RelativeSpd;
    const Triple xyz = color::apply(constants().lms_to_xyz, spd_to_lms(Spectrum(raw)));
    for (double& v : raw) v /= xyz[1];
    return Spectrum(raw);
  }();
  return spd;
}

}  // namespace chromac::color
