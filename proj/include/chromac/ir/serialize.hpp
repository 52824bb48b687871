#pragma once

#include <filesystem>
#include <string>

#include "chromac/ir/graph.hpp"

namespace chromac::ir {

/// `.irj` text: a versioned JSON document with a deterministic field order.
[[nodiscard]] std::string to_irj(const Graph& g);
/// Throws IoError on malformed documents and ShapeError if the graph is inconsistent.
[[nodiscard]] Graph from_irj(const std::string& text);

void save_irj(const std::filesystem::path& path, const Graph& g);
[[nodiscard]] Graph load_irj(const std::filesystem::path& path);

}  // namespace chromac::ir
