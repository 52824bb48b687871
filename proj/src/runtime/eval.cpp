#include "chromac/runtime/eval.hpp"

#include <cmath>

#include "chromac/error.hpp"

namespace chromac::runtime {

namespace {

using ir::Op;

double scalar_op(Op op, double a, double b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Pow:
      if (a < 0.0 && b != std::floor(b)) {
        throw EvalError("pow of negative base " + std::to_string(a) + " to non-integer exponent " + std::to_string(b));
      }
      return std::pow(a, b);
    case Op::Max: return std::max(a, b);
    case Op::Min: return std::min(a, b);
    case Op::FloorMod: return a - b * std::floor(a / b);
    default: throw InternalError("not a binary elementwise op");
  }
}

Tensor matmul(const Tensor& a, const Tensor& b, const Shape& out_shape) {
  const std::int64_t k = b.shape()[0];
  const std::int64_t n = b.shape()[1];
  const std::int64_t rows = a.shape().numel() / k;
  Tensor out(out_shape);
  const auto A = a.data();
  const auto B = b.data();
  auto O = out.data();
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t p = 0; p < k; ++p) {
      const double av = A[r * k + p];
      if (av == 0.0) continue;
      for (std::int64_t c = 0; c < n; ++c) O[r * n + c] += av * B[p * n + c];
    }
  }
  return out;
}

}  // namespace

Tensor apply_op(ir::Op op, const std::vector<const Tensor*>& xs) {
  std::vector<Shape> shapes;
  for (const Tensor* t : xs) shapes.push_back(t->shape());
  const auto shape = ir::infer_shape(op, shapes);
  if (!shape) throw ShapeError(std::string(ir::op_name(op)) + " cannot combine its operand shapes");
  if (op == Op::MatMul) return matmul(*xs[0], *xs[1], *shape);
  Tensor out(*shape);
  auto o = out.data();
  const std::size_t total = o.size();
  // A broadcast operand is a right-aligned suffix of the output, so flat index modulo its
  // size addresses the matching element.
  if (op == Op::Select) {
    const auto c = xs[0]->data();
    const auto a = xs[1]->data();
    const auto b = xs[2]->data();
    for (std::size_t i = 0; i < total; ++i) o[i] = c[i % c.size()] > 0.0 ? a[i % a.size()] : b[i % b.size()];
    return out;
  }
  const auto a = xs[0]->data();
  const auto b = xs[1]->data();
  if (a.size() == total && b.size() == total) {
    for (std::size_t i = 0; i < total; ++i) o[i] = scalar_op(op, a[i], b[i]);
  } else {
    for (std::size_t i = 0; i < total; ++i) o[i] = scalar_op(op, a[i % a.size()], b[i % b.size()]);
  }
  return out;
}

TensorMap evaluate(const ir::Graph& g, const TensorMap& inputs) {
  for (const auto& [name, t] : inputs) {
    if (!g.find_input(name)) throw InvalidInput("graph has no input named '" + name + "'");
  }
  std::vector<Tensor> values(g.size());
  // Free intermediates once their last user has run.
  std::vector<std::size_t> last_use(g.size(), 0);
  for (ir::NodeId id = 0; id < g.size(); ++id) {
    for (ir::NodeId o : g.node(id).operands) last_use[o] = id;
  }
  for (const auto& [name, id] : g.outputs()) last_use[id] = g.size();
  for (ir::NodeId id = 0; id < g.size(); ++id) {
    const ir::Node& n = g.node(id);
    if (n.op == Op::Const) {
      values[id] = *n.value;
    } else if (n.op == Op::Input) {
      auto it = inputs.find(n.name);
      if (it == inputs.end()) throw InvalidInput("missing input '" + n.name + "'");
      if (!(it->second.shape() == n.shape)) {
        throw InvalidInput("input '" + n.name + "' has shape " + it->second.shape().str() + ", expected " + n.shape.str());
      }
      values[id] = it->second;
    } else {
      std::vector<const Tensor*> xs;
      for (ir::NodeId o : n.operands) xs.push_back(&values[o]);
      try {
        values[id] = apply_op(n.op, xs);
      } catch (const EvalError& e) {
        throw EvalError("node " + std::to_string(id) + " (" + std::string(ir::op_name(n.op)) + "): " + e.what());
      }
      if (!values[id].all_finite()) {
        throw EvalError("node " + std::to_string(id) + " (" + std::string(ir::op_name(n.op)) +
                        ") produced a non-finite value");
      }
      for (ir::NodeId o : n.operands) {
        if (last_use[o] == id && g.node(o).op != Op::Const && g.node(o).op != Op::Input) values[o] = Tensor();
      }
    }
  }
  TensorMap out;
  for (const auto& [name, id] : g.outputs()) out.emplace(name, values[id]);
  return out;
}

}  // namespace chromac::runtime
