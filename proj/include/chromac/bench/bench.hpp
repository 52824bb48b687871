#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chromac/lang/type_check.hpp"
#include "chromac/opt/optimize.hpp"
#include "chromac/runtime/eval.hpp"

namespace chromac::bench {

/// SpaceConv, ColorBlindness, Adaptation, Interpolation, Mixing, LAB2HSV.
[[nodiscard]] const std::vector<std::string>& benchmark_names();

/// Source text of a benchmark at the given image size. Throws InvalidInput for unknown names.
[[nodiscard]] std::string benchmark_source(std::string_view name, std::int64_t height, std::int64_t width);

/// A random value drawn from the valid domain of `t`: encoded channels in [0,255], spectra
/// in [0,1] (scattering at least 0.05), matrices in (0,1], LAB from in-gamut sRGB.
[[nodiscard]] Tensor random_value(const lang::ShapedType& t, std::mt19937_64& rng);

/// Random values for every input of a checked program.
[[nodiscard]] runtime::TensorMap random_inputs(const lang::TypedProgram& tp, std::mt19937_64& rng);

/// Seed from CHROMAC_SEED, or `fallback` when unset.
[[nodiscard]] std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

struct BenchReport {
  std::string program;
  std::int64_t height = 0;
  std::int64_t width = 0;
  std::size_t nodes_unoptimized = 0;
  std::size_t nodes_optimized = 0;
  std::uint64_t cost_unoptimized = 0;
  std::uint64_t cost_optimized = 0;
  double compile_seconds = 0;
  double optimize_seconds = 0;
  double run_unoptimized_seconds = 0;
  double run_optimized_seconds = 0;
  double max_relative_deviation = 0;
  std::optional<std::string> error;
};

[[nodiscard]] BenchReport run_benchmark(std::string_view name, std::int64_t height, std::int64_t width,
                                        const opt::SaturationLimits& limits, std::uint64_t seed);

[[nodiscard]] std::string format_table(const std::vector<BenchReport>& rows);
[[nodiscard]] std::string to_json_line(const BenchReport& r);

}  // namespace chromac::bench
