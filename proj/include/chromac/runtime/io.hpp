#pragma once

#include <filesystem>

#include "chromac/runtime/tensor.hpp"

namespace chromac::runtime {

/// 8-bit RGB or RGBA PNG to an H x W x 3 tensor of values in [0, 255]; alpha is dropped.
[[nodiscard]] Tensor load_png(const std::filesystem::path& path);
/// Writes an H x W x 3 tensor as 8-bit RGB, rounding to nearest and clamping to [0, 255].
void save_png(const std::filesystem::path& path, const Tensor& t);

/// `.cten`: "CTEN", u32 version, u32 rank, u64 dims, then f64 row-major data, all little-endian.
[[nodiscard]] Tensor load_tensor(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const Tensor& t);

}  // namespace chromac::runtime
