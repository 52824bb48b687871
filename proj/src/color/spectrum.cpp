#include "chromac/color/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chromac/error.hpp"

namespace chromac::color {

Spectrum::Spectrum(const std::array<double, kBands>& samples) : samples_(samples) {
  for (std::size_t i = 0; i < kBands; ++i) {
    if (!std::isfinite(samples_[i])) {
      throw InvalidInput("spectrum sample at " + std::to_string(band_wavelength(i)) + " nm is not finite");
    }
  }
}

Spectrum Spectrum::from(std::span<const double> samples) {
  if (samples.size() != kBands) {
    throw InvalidInput("a spectrum needs " + std::to_string(kBands) + " samples, got " +
                       std::to_string(samples.size()));
  }
  std::array<double, kBands> a{};
  std::copy(samples.begin(), samples.end(), a.begin());
  return Spectrum(a);
}

Spectrum Spectrum::constant(double v) {
  std::array<double, kBands> a{};
  a.fill(v);
  return Spectrum(a);
}

bool Spectrum::nonnegative() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return v >= 0.0; });
}

}  // namespace chromac::color
