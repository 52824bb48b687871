#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromac/ir/shape.hpp"
#include "chromac/runtime/tensor.hpp"

namespace chromac::ir {

using NodeId = std::uint32_t;

/// Core tensor ops plus the extension set (max, min, select, floor_mod) used by HSV.
enum class Op { Const, Input, Add, Sub, Mul, Div, Pow, MatMul, Max, Min, Select, FloorMod };

[[nodiscard]] std::string_view op_name(Op op);
[[nodiscard]] std::optional<Op> op_from_name(std::string_view s);
/// Operand count; 0 for leaves.
[[nodiscard]] std::size_t arity(Op op);
[[nodiscard]] bool is_extension(Op op);

/// Result shape of `op` on the given operand shapes, or nullopt if they do not fit.
/// select(c, a, b) broadcasts all three operands.
[[nodiscard]] std::optional<Shape> infer_shape(Op op, const std::vector<Shape>& operands);

/// Conservative nonnegativity of an op's result given its operands' nonnegativity.
[[nodiscard]] bool infer_nonneg(Op op, const std::vector<bool>& operands);

struct Node {
  Op op = Op::Const;
  std::vector<NodeId> operands;
  Shape shape;
  bool const_flag = false;  // depends on const leaves only
  bool nonneg = false;      // provably >= 0 everywhere
  std::optional<Tensor> value;  // Const payload
  std::string name;             // Input name
};

/// A DAG of tensor ops in topological order (operands always precede their users).
/// Structurally identical nodes and equal constants are shared.
class Graph {
 public:
  NodeId add_const(Tensor value);
  NodeId add_scalar(double v) { return add_const(Tensor::scalar(v)); }
  /// `nonneg` declares that every supplied value is >= 0.
  NodeId add_input(const std::string& name, Shape shape, bool nonneg);
  /// Throws ShapeError if the operand shapes do not fit `op`.
  NodeId add_op(Op op, std::vector<NodeId> operands);
  void add_output(const std::string& name, NodeId node);

  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
  [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<NodeId>& inputs() const { return inputs_; }
  [[nodiscard]] const std::vector<std::pair<std::string, NodeId>>& outputs() const { return outputs_; }
  [[nodiscard]] std::optional<NodeId> find_input(std::string_view name) const;

  /// Appends a node exactly as given (used when loading serialized graphs); no sharing.
  NodeId push_raw(Node n);

 private:
  NodeId push(Node n);

  std::vector<Node> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<std::pair<std::string, NodeId>> outputs_;
  std::map<std::pair<std::vector<std::int64_t>, std::vector<double>>, NodeId> consts_;
  std::map<std::pair<Op, std::vector<NodeId>>, NodeId> ops_;
};

/// Recomputes every node's shape, flags and operand references; throws ShapeError naming
/// the offending node and shapes on any inconsistency.
void ir_shape_check(const Graph& g);

/// Copy containing only nodes reachable from the outputs (inputs are always kept).
[[nodiscard]] Graph prune(const Graph& g);

/// Number of op nodes (excluding const and input leaves).
[[nodiscard]] std::size_t op_count(const Graph& g);

}  // namespace chromac::ir
