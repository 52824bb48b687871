#include "chromac/ir/graph.hpp"

#include <algorithm>
#include <array>

#include "chromac/error.hpp"

namespace chromac::ir {

namespace {

constexpr std::array<std::string_view, 12> kNames = {"const", "input", "add", "sub",    "mul",    "div",
                                                     "pow",   "matmul", "max", "min", "select", "floor_mod"};

bool all_nonneg(const Tensor& t) {
  return std::all_of(t.data().begin(), t.data().end(), [](double v) { return v >= 0.0; });
}

}  // namespace

std::string_view op_name(Op op) { return kNames[static_cast<std::size_t>(op)]; }

std::optional<Op> op_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == s) return static_cast<Op>(i);
  }
  return std::nullopt;
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::Const:
    case Op::Input: return 0;
    case Op::Select: return 3;
    default: return 2;
  }
}

bool is_extension(Op op) { return op == Op::Max || op == Op::Min || op == Op::Select || op == Op::FloorMod; }

std::optional<Shape> infer_shape(Op op, const std::vector<Shape>& s) {
  if (s.size() != arity(op) || s.empty()) return std::nullopt;
  switch (op) {
    case Op::MatMul: return matmul_shape(s[0], s[1]);
    case Op::Select: {
      auto ab = broadcast_shapes(s[1], s[2]);
      if (!ab) return std::nullopt;
      return broadcast_shapes(s[0], *ab);
    }
    default: return broadcast_shapes(s[0], s[1]);
  }
}

bool infer_nonneg(Op op, const std::vector<bool>& n) {
  switch (op) {
    case Op::Const:
    case Op::Input:
    case Op::Sub: return false;
    case Op::Add:
    case Op::Mul:
    case Op::Div:
    case Op::MatMul:
    case Op::Min: return n[0] && n[1];
    case Op::Pow: return n[0];
    case Op::Max: return n[0] || n[1];
    case Op::Select: return n[1] && n[2];
    case Op::FloorMod: return n[1];
  }
  return false;
}

NodeId Graph::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::push_raw(Node n) {
  for (NodeId o : n.operands) {
    if (o >= nodes_.size()) throw ShapeError("node " + std::to_string(nodes_.size()) + " refers to a later node");
  }
  const NodeId id = push(std::move(n));
  const Node& added = nodes_.back();
  if (added.op == Op::Input) {
    inputs_.push_back(id);
  } else if (added.op == Op::Const && added.value) {
    consts_.try_emplace({added.shape.vec(), std::vector<double>(added.value->data().begin(), added.value->data().end())}, id);
  } else {
    ops_.try_emplace({added.op, added.operands}, id);
  }
  return id;
}

NodeId Graph::add_const(Tensor value) {
  auto key = std::make_pair(value.shape().vec(), std::vector<double>(value.data().begin(), value.data().end()));
  if (auto it = consts_.find(key); it != consts_.end()) return it->second;
  Node n;
  n.op = Op::Const;
  n.shape = value.shape();
  n.const_flag = true;
  n.nonneg = all_nonneg(value);
  n.value = std::move(value);
  const NodeId id = push(std::move(n));
  consts_.emplace(std::move(key), id);
  return id;
}

NodeId Graph::add_input(const std::string& name, Shape shape, bool nonneg) {
  if (find_input(name)) throw InvalidInput("duplicate graph input '" + name + "'");
  Node n;
  n.op = Op::Input;
  n.shape = std::move(shape);
  n.nonneg = nonneg;
  n.name = name;
  const NodeId id = push(std::move(n));
  inputs_.push_back(id);
  return id;
}

NodeId Graph::add_op(Op op, std::vector<NodeId> operands) {
  if (arity(op) == 0 || operands.size() != arity(op)) {
    throw InternalError("bad operand count for " + std::string(op_name(op)));
  }
  auto key = std::make_pair(op, operands);
  if (auto it = ops_.find(key); it != ops_.end()) return it->second;
  std::vector<Shape> shapes;
  std::vector<bool> nn;
  bool cf = true;
  for (NodeId o : operands) {
    const Node& on = node(o);
    shapes.push_back(on.shape);
    nn.push_back(on.nonneg);
    cf = cf && on.const_flag;
  }
  auto shape = infer_shape(op, shapes);
  if (!shape) {
    std::string msg = std::string(op_name(op)) + " cannot combine shapes";
    for (const auto& s : shapes) msg += " " + s.str();
    throw ShapeError(msg);
  }
  Node n;
  n.op = op;
  n.operands = std::move(operands);
  n.shape = *shape;
  n.const_flag = cf;
  n.nonneg = infer_nonneg(op, nn);
  const NodeId id = push(std::move(n));
  ops_.emplace(std::move(key), id);
  return id;
}

void Graph::add_output(const std::string& name, NodeId node) {
  if (node >= nodes_.size()) throw InternalError("output refers to a missing node");
  for (const auto& [n, id] : outputs_) {
    if (n == name) throw InvalidInput("duplicate graph output '" + name + "'");
  }
  outputs_.emplace_back(name, node);
}

std::optional<NodeId> Graph::find_input(std::string_view name) const {
  for (NodeId id : inputs_) {
    if (nodes_[id].name == name) return id;
  }
  return std::nullopt;
}

void ir_shape_check(const Graph& g) {
  const auto& nodes = g.nodes();
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    const std::string where = "node " + std::to_string(id) + " (" + std::string(op_name(n.op)) + ")";
    if (n.operands.size() != arity(n.op)) throw ShapeError(where + ": wrong operand count");
    if (n.op == Op::Const) {
      if (!n.value) throw ShapeError(where + ": missing payload");
      if (!(n.value->shape() == n.shape)) {
        throw ShapeError(where + ": payload shape " + n.value->shape().str() + " vs annotation " + n.shape.str());
      }
      if (!n.const_flag) throw ShapeError(where + ": const leaf without const flag");
      continue;
    }
    if (n.op == Op::Input) {
      if (n.const_flag) throw ShapeError(where + ": input flagged constant");
      continue;
    }
    std::vector<Shape> shapes;
    bool cf = true;
    for (NodeId o : n.operands) {
      if (o >= id) throw ShapeError(where + ": operand " + std::to_string(o) + " is not earlier in the graph");
      shapes.push_back(nodes[o].shape);
      cf = cf && nodes[o].const_flag;
    }
    auto s = infer_shape(n.op, shapes);
    if (!s) {
      std::string msg = where + ": incompatible operand shapes";
      for (const auto& sh : shapes) msg += " " + sh.str();
      throw ShapeError(msg);
    }
    if (!(*s == n.shape)) throw ShapeError(where + ": annotated " + n.shape.str() + " but operands give " + s->str());
    if (cf != n.const_flag) throw ShapeError(where + ": const flag disagrees with operands");
  }
  for (const auto& [name, id] : g.outputs()) {
    if (id >= nodes.size()) throw ShapeError("output '" + name + "' refers to a missing node");
  }
}

Graph prune(const Graph& g) {
  std::vector<bool> live(g.size(), false);
  for (const auto& [name, id] : g.outputs()) live[id] = true;
  for (NodeId id : g.inputs()) live[id] = true;
  for (std::size_t i = g.size(); i-- > 0;) {
    if (!live[i]) continue;
    for (NodeId o : g.node(static_cast<NodeId>(i)).operands) live[o] = true;
  }
  Graph out;
  std::vector<NodeId> remap(g.size(), 0);
  for (NodeId id = 0; id < g.size(); ++id) {
    if (!live[id]) continue;
    Node n = g.node(id);
    for (auto& o : n.operands) o = remap[o];
    remap[id] = out.push_raw(std::move(n));
  }
  for (const auto& [name, id] : g.outputs()) out.add_output(name, remap[id]);
  return out;
}

std::size_t op_count(const Graph& g) {
  return static_cast<std::size_t>(std::count_if(g.nodes().begin(), g.nodes().end(), [](const Node& n) {
    return n.op != Op::Const && n.op != Op::Input;
  }));
}

}  // namespace chromac::ir
