#pragma once

#include <map>
#include <string>
#include <vector>

#include "chromac/ir/graph.hpp"
#include "chromac/runtime/tensor.hpp"

namespace chromac::runtime {

using TensorMap = std::map<std::string, Tensor>;

/// Applies one non-leaf op. Elementwise ops broadcast the smaller operand; matmul batches
/// over the leading axes of its left operand. Throws EvalError on pow domain errors.
[[nodiscard]] Tensor apply_op(ir::Op op, const std::vector<const Tensor*>& operands);

/// Evaluates every output of `g`. Each declared input must be supplied with exactly its
/// declared shape. Throws EvalError naming the node on a non-finite intermediate.
[[nodiscard]] TensorMap evaluate(const ir::Graph& g, const TensorMap& inputs);

}  // namespace chromac::runtime
