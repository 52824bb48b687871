#pragma once

#include "chromac/ir/graph.hpp"
#include "chromac/runtime/eval.hpp"

namespace chromac::testsupport {

/// Scalar-at-a-time interpreter: every output element is computed from explicit
/// multi-index arithmetic. Slow and independent of the runtime's loops.
[[nodiscard]] runtime::TensorMap naive_evaluate(const ir::Graph& g, const runtime::TensorMap& inputs);

}  // namespace chromac::testsupport
