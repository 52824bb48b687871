#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chromac/ir/graph.hpp"
#include "chromac/opt/egraph.hpp"
#include "chromac/opt/rules.hpp"

namespace chromac::opt {

struct SaturationLimits {
  std::size_t max_iterations = 30;
  std::size_t max_enodes = 50000;
  /// Matches a rule may produce in one iteration before it is temporarily banned.
  std::size_t match_budget = 1000;
  /// Pattern search steps a rule may spend in one iteration before it is temporarily banned.
  std::size_t search_budget = 20000;
  /// Iterations a rule sits out after its first ban.
  std::size_t ban_length = 2;
};

enum class StopReason { Saturated, IterationLimit, NodeLimit };

[[nodiscard]] std::string_view stop_reason_name(StopReason r);

struct SaturationReport {
  std::size_t iterations = 0;
  StopReason stop = StopReason::Saturated;
  std::size_t enodes = 0;
  std::size_t eclasses = 0;
};

/// Applies every rule to every class until nothing changes or a limit is hit.
SaturationReport saturate(EGraph& eg, const std::vector<Rule>& rules, const SaturationLimits& limits);

/// Scalar operations performed by one node: 0 for leaves and constant subgraphs, the output
/// element count for elementwise ops, output elements times the inner extent for matmul.
[[nodiscard]] std::uint64_t node_cost(ir::Op op, const Shape& out, const std::vector<Shape>& operands, bool const_flag);

/// Sum of node costs over the nodes reachable from the outputs.
[[nodiscard]] std::uint64_t graph_cost(const ir::Graph& g);

/// Cheapest graph held by the e-graph for the given output classes. Input order and names
/// follow `original`.
[[nodiscard]] ir::Graph extract(const EGraph& eg, const ir::Graph& original, const std::vector<ClassId>& classes);

struct FoldResult {
  ir::Graph graph;
  std::vector<std::string> warnings;
};

/// Replaces every constant subgraph by a const leaf holding its value. Subgraphs whose
/// evaluation fails are left in place and reported.
[[nodiscard]] FoldResult constant_fold(const ir::Graph& g);

struct OptimizeReport {
  SaturationReport saturation;
  std::uint64_t cost_before = 0;
  std::uint64_t cost_after = 0;
  bool kept_original = false;
  std::vector<std::string> warnings;
};

/// Saturation, extraction and constant folding. Never returns a costlier graph.
[[nodiscard]] ir::Graph optimize(const ir::Graph& g, const SaturationLimits& limits = {}, OptimizeReport* report = nullptr);

}  // namespace chromac::opt
