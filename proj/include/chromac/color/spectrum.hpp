#pragma once

#include <array>
#include <span>
#include <vector>

#include "chromac/color/tables.hpp"

namespace chromac::color {

inline constexpr std::size_t kBands = tables::kBands;
inline constexpr int kFirstWavelengthNm = 390;
inline constexpr int kLastWavelengthNm = 830;
inline constexpr int kBandStepNm = 5;

/// Wavelength in nm of band `i`.
constexpr int band_wavelength(std::size_t i) { return kFirstWavelengthNm + kBandStepNm * static_cast<int>(i); }

/// One sample per 5 nm band over [390, 830] nm. Samples are always finite.
class Spectrum {
 public:
  Spectrum() { samples_.fill(0.0); }
  explicit Spectrum(const std::array<double, kBands>& samples);
  /// Throws InvalidInput unless `samples` has exactly 89 finite entries.
  static Spectrum from(std::span<const double> samples);
  static Spectrum constant(double v);

  [[nodiscard]] double operator[](std::size_t band) const { return samples_[band]; }
  [[nodiscard]] std::span<const double> samples() const { return samples_; }
  [[nodiscard]] bool nonnegative() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::array<double, kBands> samples_;
};

/// A pigment described by its absorption (K) and scattering (S) spectra.
struct Pigment {
  Spectrum absorption;
  Spectrum scattering;
};

}  // namespace chromac::color
