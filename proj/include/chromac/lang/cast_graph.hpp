#pragma once

#include <span>
#include <vector>

#include "chromac/lang/types.hpp"

namespace chromac::lang {

/// One adjacent conversion. Each step has exactly one lowering recipe.
enum class CastStep {
  LightToLms,
  LmsToXyz,
  XyzToLms,
  XyzToSrgb,
  SrgbToXyz,
  XyzToOpRgb,
  OpRgbToXyz,
  XyzToLab,
  LabToXyz,
  SrgbToHsv,
  HsvToSrgb,
  XyzToChromaticity,
  PigmentToScattering,
  PigmentToAbsorption,
  PigmentToReflectance,
};

struct CastEdge {
  PhysicalType from;
  PhysicalType to;
  CastStep step;
};

/// Every implicit-search edge. Matrix conversions are explicit-only and not listed here.
[[nodiscard]] std::span<const CastEdge> cast_edges();

[[nodiscard]] bool path_exists(PhysicalType from, PhysicalType to);

/// The unique shortest chain of adjacent casts; empty when from == to.
/// Throws InvalidInput naming both types when there is no path.
[[nodiscard]] std::vector<CastEdge> cast_path(PhysicalType from, PhysicalType to);

/// Throws InternalError if some ordered pair has more than one shortest path.
/// Runs once automatically before the first query.
void verify_unique_shortest_paths();

}  // namespace chromac::lang
