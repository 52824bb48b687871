#include "support/naive_eval.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace chromac::testsupport {

namespace {

using Index = std::vector<std::int64_t>;

Index unravel(std::int64_t flat, const Shape& s) {
  Index idx(s.rank());
  for (std::size_t i = s.rank(); i-- > 0;) {
    idx[i] = flat % s[i];
    flat /= s[i];
  }
  return idx;
}

std::int64_t ravel(const Index& idx, const Shape& s) {
  std::int64_t flat = 0;
  for (std::size_t i = 0; i < s.rank(); ++i) flat = flat * s[i] + idx[i];
  return flat;
}

/// Element of `t` read by output position `out` under right-aligned broadcasting.
double read(const Tensor& t, const Index& out) {
  const Shape s = t.shape().strip_leading_ones();
  if (s.numel() == 1) return t[0];
  if (s.rank() > out.size()) throw std::logic_error("operand outranks result");
  Index idx(out.end() - static_cast<std::ptrdiff_t>(s.rank()), out.end());
  for (std::size_t i = 0; i < s.rank(); ++i) {
    if (idx[i] >= s[i]) throw std::logic_error("broadcast index out of range");
  }
  return t[static_cast<std::size_t>(ravel(idx, s))];
}

double scalar_op(ir::Op op, const std::vector<double>& x) {
  switch (op) {
    case ir::Op::Add: return x[0] + x[1];
    case ir::Op::Sub: return x[0] - x[1];
    case ir::Op::Mul: return x[0] * x[1];
    case ir::Op::Div: return x[0] / x[1];
    case ir::Op::Pow: return std::pow(x[0], x[1]);
    case ir::Op::Max: return x[0] > x[1] ? x[0] : x[1];
    case ir::Op::Min: return x[0] < x[1] ? x[0] : x[1];
    case ir::Op::Select: return x[0] > 0 ? x[1] : x[2];
    case ir::Op::FloorMod: return x[0] - x[1] * std::floor(x[0] / x[1]);
    default: throw std::logic_error("not an elementwise op");
  }
}

Tensor matmul(const Tensor& a, const Tensor& b, const Shape& out) {
  const std::int64_t k = b.shape()[0];
  const std::int64_t n = b.shape()[1];
  Tensor r(out);
  for (std::int64_t f = 0; f < out.numel(); ++f) {
    const Index o = unravel(f, out);
    const std::int64_t col = o.back();
    // Row of `a` addressed by every axis of the result but the last.
    Index row(o.begin(), o.end() - 1);
    double sum = 0;
    for (std::int64_t i = 0; i < k; ++i) {
      Index ai = row;
      ai.push_back(i);
      sum += a[static_cast<std::size_t>(ravel(ai, a.shape()))] * b[static_cast<std::size_t>(i * n + col)];
    }
    r[static_cast<std::size_t>(f)] = sum;
  }
  return r;
}

}  // namespace

runtime::TensorMap naive_evaluate(const ir::Graph& g, const runtime::TensorMap& inputs) {
  std::vector<Tensor> values(g.size());
  for (ir::NodeId id = 0; id < g.size(); ++id) {
    const ir::Node& n = g.node(id);
    if (n.op == ir::Op::Const) {
      values[id] = *n.value;
      continue;
    }
    if (n.op == ir::Op::Input) {
      values[id] = inputs.at(n.name);
      continue;
    }
    if (n.op == ir::Op::MatMul) {
      values[id] = matmul(values[n.operands[0]], values[n.operands[1]], n.shape);
      continue;
    }
    Tensor r(n.shape);
    std::vector<double> x(n.operands.size());
    for (std::int64_t f = 0; f < n.shape.numel(); ++f) {
      const Index o = unravel(f, n.shape);
      for (std::size_t i = 0; i < n.operands.size(); ++i) x[i] = read(values[n.operands[i]], o);
      r[static_cast<std::size_t>(f)] = scalar_op(n.op, x);
    }
    values[id] = std::move(r);
  }
  runtime::TensorMap out;
  for (const auto& [name, id] : g.outputs()) out.emplace(name, values[id]);
  return out;
}

}  // namespace chromac::testsupport
