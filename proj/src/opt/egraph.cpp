#include "chromac/opt/egraph.hpp"

#include <algorithm>

#include "chromac/error.hpp"
#include "chromac/runtime/eval.hpp"

namespace chromac::opt {

using ir::Op;

std::size_t ENodeHash::operator()(const ENode& n) const {
  std::size_t h = static_cast<std::size_t>(n.op) * 0x9e3779b97f4a7c15ULL ^ n.payload;
  for (ClassId c : n.children) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

ClassId EGraph::find(ClassId id) const {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

ENode EGraph::canonical(ENode n) const {
  for (auto& c : n.children) c = find(c);
  return n;
}

std::optional<Shape> EGraph::shape_of(Op op, const std::vector<ClassId>& children) const {
  std::vector<Shape> shapes;
  shapes.reserve(children.size());
  for (ClassId c : children) shapes.push_back(data(c).shape);
  return ir::infer_shape(op, shapes);
}

ClassData EGraph::compute(const ENode& n) const {
  ClassData d;
  if (n.op == Op::Const) {
    const auto& t = consts_[n.payload];
    d.shape = t->shape();
    d.const_flag = true;
    d.nonneg = std::all_of(t->data().begin(), t->data().end(), [](double v) { return v >= 0.0; });
    if (t->shape().numel() <= kValueCap) d.value = t;
    return d;
  }
  if (n.op == Op::Input) {
    d.shape = inputs_[n.payload].shape;
    d.nonneg = inputs_[n.payload].nonneg;
    return d;
  }
  auto shape = shape_of(n.op, n.children);
  if (!shape) throw ShapeError("e-node " + std::string(ir::op_name(n.op)) + " has incompatible child shapes");
  d.shape = *shape;
  d.const_flag = true;
  std::vector<bool> nn;
  std::vector<const Tensor*> vals;
  for (ClassId c : n.children) {
    const ClassData& cd = data(c);
    d.const_flag = d.const_flag && cd.const_flag;
    nn.push_back(cd.nonneg);
    vals.push_back(cd.value.get());
  }
  d.nonneg = ir::infer_nonneg(n.op, nn);
  if (d.const_flag && d.shape.numel() <= kValueCap &&
      std::all_of(vals.begin(), vals.end(), [](const Tensor* t) { return t != nullptr; })) {
    try {
      auto t = runtime::apply_op(n.op, vals);
      if (t.all_finite()) d.value = std::make_shared<const Tensor>(std::move(t));
    } catch (const Error&) {
      // Leave the value unknown; constant folding reports the problem.
    }
  }
  return d;
}

ClassId EGraph::insert(ENode n, ClassData data) {
  if (auto it = memo_.find(n); it != memo_.end()) return find(it->second);
  const auto id = static_cast<ClassId>(classes_.size());
  parent_.push_back(id);
  classes_.push_back(EClass{{n}, std::move(data)});
  memo_.emplace(std::move(n), id);
  ++node_count_;
  return id;
}

ClassId EGraph::add_const(Tensor t) {
  auto key = std::make_pair(t.shape().vec(), std::vector<double>(t.data().begin(), t.data().end()));
  std::uint32_t idx;
  if (auto it = const_index_.find(key); it != const_index_.end()) {
    idx = it->second;
  } else {
    idx = static_cast<std::uint32_t>(consts_.size());
    consts_.push_back(std::make_shared<const Tensor>(std::move(t)));
    const_index_.emplace(std::move(key), idx);
  }
  ENode n{Op::Const, {}, idx};
  return insert(n, compute(n));
}

ClassId EGraph::add_input(const std::string& name, const Shape& shape, bool nonneg) {
  const auto idx = static_cast<std::uint32_t>(inputs_.size());
  inputs_.push_back({name, shape, nonneg});
  ENode n{Op::Input, {}, idx};
  return insert(n, compute(n));
}

ClassId EGraph::add(ENode n) {
  n = canonical(std::move(n));
  if (auto it = memo_.find(n); it != memo_.end()) return find(it->second);
  ClassData d = compute(n);
  return insert(std::move(n), std::move(d));
}

bool EGraph::merge(ClassId a, ClassId b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (!(classes_[a].data.shape == classes_[b].data.shape)) {
    throw InternalError("merging e-classes of shapes " + classes_[a].data.shape.str() + " and " +
                        classes_[b].data.shape.str());
  }
  if (a > b) std::swap(a, b);  // keep the older id as the root
  parent_[b] = a;
  EClass& ca = classes_[a];
  EClass& cb = classes_[b];
  ca.nodes.insert(ca.nodes.end(), cb.nodes.begin(), cb.nodes.end());
  ca.data.const_flag = ca.data.const_flag || cb.data.const_flag;
  ca.data.nonneg = ca.data.nonneg || cb.data.nonneg;
  if (!ca.data.value) ca.data.value = cb.data.value;
  cb.nodes.clear();
  cb.nodes.shrink_to_fit();
  return true;
}

void EGraph::rebuild() {
  // Re-hash every node under canonical ids; congruent nodes in different classes merge.
  bool changed = true;
  while (changed) {
    changed = false;
    memo_.clear();
    std::vector<std::pair<ClassId, ClassId>> pending;
    for (ClassId id = 0; id < classes_.size(); ++id) {
      if (find(id) != id) continue;
      for (auto& n : classes_[id].nodes) {
        n = canonical(std::move(n));
        auto [it, fresh] = memo_.emplace(n, id);
        if (!fresh && find(it->second) != id) pending.emplace_back(it->second, id);
      }
    }
    for (auto [a, b] : pending) changed = merge(a, b) || changed;
  }
  node_count_ = 0;
  for (ClassId id = 0; id < classes_.size(); ++id) {
    if (find(id) != id) continue;
    auto& nodes = classes_[id].nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    node_count_ += nodes.size();
  }
  while (refresh_analysis()) {
  }
}

bool EGraph::refresh_analysis() {
  bool changed = false;
  for (ClassId id = 0; id < classes_.size(); ++id) {
    if (find(id) != id) continue;
    EClass& c = classes_[id];
    for (const auto& n : c.nodes) {
      if (c.data.const_flag && c.data.nonneg && (c.data.value || c.data.shape.numel() > kValueCap)) break;
      if (n.op == Op::Const || n.op == Op::Input) continue;
      const ClassData d = compute(n);
      if (d.const_flag && !c.data.const_flag) {
        c.data.const_flag = true;
        changed = true;
      }
      if (d.nonneg && !c.data.nonneg) {
        c.data.nonneg = true;
        changed = true;
      }
      if (d.value && !c.data.value) {
        c.data.value = d.value;
        changed = true;
      }
    }
  }
  return changed;
}

std::vector<ClassId> EGraph::class_ids() const {
  std::vector<ClassId> ids;
  for (ClassId id = 0; id < classes_.size(); ++id) {
    if (find(id) == id) ids.push_back(id);
  }
  return ids;
}

std::size_t EGraph::class_count() const { return class_ids().size(); }

std::vector<ClassId> add_graph(EGraph& eg, const ir::Graph& g) {
  std::vector<ClassId> cls(g.size());
  for (ir::NodeId id = 0; id < g.size(); ++id) {
    const ir::Node& n = g.node(id);
    if (n.op == Op::Const) {
      cls[id] = eg.add_const(*n.value);
    } else if (n.op == Op::Input) {
      cls[id] = eg.add_input(n.name, n.shape, n.nonneg);
    } else {
      ENode e{n.op, {}, 0};
      for (ir::NodeId o : n.operands) e.children.push_back(cls[o]);
      cls[id] = eg.add(std::move(e));
    }
  }
  eg.rebuild();
  return cls;
}

}  // namespace chromac::opt
