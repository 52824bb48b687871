#include "chromac/opt/optimize.hpp"

#include <limits>
#include <algorithm>
#include <map>
#include <set>

#include "chromac/error.hpp"
#include "chromac/runtime/eval.hpp"

namespace chromac::opt {

using ir::Op;

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Saturated: return "saturated";
    case StopReason::IterationLimit: return "iteration limit";
    case StopReason::NodeLimit: return "node limit";
  }
  return "?";
}

SaturationReport saturate(EGraph& eg, const std::vector<Rule>& rules, const SaturationLimits& limits) {
  SaturationReport rep;
  rep.stop = StopReason::IterationLimit;
  // Backoff scheduling: a rule whose match count or search work exceeds its budget sits out
  // a few iterations; match budget and ban length double each time it is banned.
  struct RuleState {
    std::size_t banned_until = 0;
    std::size_t times_banned = 0;
  };
  std::vector<RuleState> state(rules.size());
  eg.rebuild();
  for (std::size_t iter = 0; iter < limits.max_iterations; ++iter) {
    struct Match {
      const Rule* rule;
      Subst subst;
      ClassId cls;
    };
    std::vector<Match> matches;
    bool any_banned = false;
    const auto ids = eg.class_ids();
    // Ops present in each class, so rules skip classes lacking their root op.
    std::vector<std::uint32_t> op_mask(ids.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (const ENode& n : eg.eclass(ids[i]).nodes) op_mask[i] |= 1U << static_cast<unsigned>(n.op);
    }
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      RuleState& st = state[ri];
      if (st.banned_until > iter) {
        any_banned = true;
        continue;
      }
      const std::size_t budget = limits.match_budget << st.times_banned;
      const std::size_t first = matches.size();
      std::size_t work = limits.search_budget;
      std::vector<Subst> found;
      const Pattern& lhs = rules[ri].lhs;
      const std::uint32_t need = lhs.kind == Pattern::Kind::Node ? 1U << static_cast<unsigned>(lhs.op) : ~0U;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if ((op_mask[i] & need) == 0) continue;
        found.clear();
        match_into(eg, lhs, ids[i], found, budget + 2 - (matches.size() - first), &work);
        for (const auto& s : found) matches.push_back({&rules[ri], s, ids[i]});
        if (matches.size() - first > budget || work == 0) break;
      }
      if (matches.size() - first > budget || work == 0) {
        matches.resize(first);
        st.banned_until = iter + (limits.ban_length << st.times_banned);
        ++st.times_banned;
        any_banned = true;
      }
    }
    const std::size_t before = eg.node_count();
    bool merged = false;
    for (const auto& m : matches) {
      if (eg.node_count() > limits.max_enodes) break;
      if (m.rule->condition && !m.rule->condition(eg, Binding{m.subst, m.rule->vars}, m.cls)) continue;
      const auto shape = pattern_shape(eg, m.rule->rhs, m.subst);
      if (!shape || !(*shape == eg.data(m.cls).shape)) continue;
      const ClassId rhs = instantiate(eg, m.rule->rhs, m.subst);
      merged = eg.merge(m.cls, rhs) || merged;
    }
    eg.rebuild();
    rep.iterations = iter + 1;
    if (eg.node_count() > limits.max_enodes) {
      rep.stop = StopReason::NodeLimit;
      break;
    }
    if (!merged && eg.node_count() == before && !any_banned) {
      rep.stop = StopReason::Saturated;
      break;
    }
    if (!merged && eg.node_count() == before) {
      // Only banned rules could still fire: let them run next iteration.
      for (auto& st : state) st.banned_until = std::min(st.banned_until, iter + 1);
    }
  }
  rep.enodes = eg.node_count();
  rep.eclasses = eg.class_count();
  return rep;
}

std::uint64_t node_cost(Op op, const Shape& out, const std::vector<Shape>& operands, bool const_flag) {
  if (const_flag || op == Op::Const || op == Op::Input) return 0;
  const auto n = static_cast<std::uint64_t>(out.numel());
  if (op == Op::MatMul) return n * static_cast<std::uint64_t>(operands[1][0]);
  return n;
}

std::uint64_t graph_cost(const ir::Graph& g) {
  std::vector<bool> live(g.size(), false);
  for (const auto& [name, id] : g.outputs()) live[id] = true;
  std::uint64_t total = 0;
  for (std::size_t i = g.size(); i-- > 0;) {
    if (!live[i]) continue;
    const ir::Node& n = g.node(static_cast<ir::NodeId>(i));
    std::vector<Shape> shapes;
    for (ir::NodeId o : n.operands) {
      live[o] = true;
      shapes.push_back(g.node(o).shape);
    }
    total += node_cost(n.op, n.shape, shapes, n.const_flag);
  }
  return total;
}

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kInf - b ? kInf : a + b; }

class Extractor {
 public:
  Extractor(const EGraph& eg, const ir::Graph& original) : eg_(eg), original_(original) {}

  ir::Graph run(const std::vector<ClassId>& classes) {
    choose();
    for (ir::NodeId id : original_.inputs()) {
      const ir::Node& n = original_.node(id);
      input_ids_[n.name] = out_.add_input(n.name, n.shape, n.nonneg);
    }
    for (const auto& [name, id] : original_.outputs()) out_.add_output(name, emit(classes[id]));
    return std::move(out_);
  }

 private:
  // Greedy bottom-up: a class's best node minimizes own cost plus its children's best
  // costs; updates require strict improvement so zero-cost cycles are never chosen.
  void choose() {
    const auto ids = eg_.class_ids();
    bool changed = true;
    while (changed) {
      changed = false;
      for (ClassId c : ids) {
        const ClassData& d = eg_.data(c);
        for (const ENode& n : eg_.eclass(c).nodes) {
          std::uint64_t cost = 0;
          std::vector<Shape> shapes;
          bool ok = true;
          for (ClassId ch : n.children) {
            const ClassId k = eg_.find(ch);
            auto it = best_.find(k);
            // A constant class is only represented through constant children.
            if (it == best_.end() || (d.const_flag && !eg_.data(k).const_flag)) {
              ok = false;
              break;
            }
            cost = sat_add(cost, it->second.first);
            shapes.push_back(eg_.data(k).shape);
          }
          if (!ok) continue;
          cost = sat_add(cost, node_cost(n.op, d.shape, shapes, d.const_flag));
          auto it = best_.find(c);
          if (it == best_.end() || cost < it->second.first) {
            best_[c] = {cost, n};
            changed = true;
          }
        }
      }
    }
  }

  ir::NodeId emit(ClassId c) {
    c = eg_.find(c);
    if (auto it = emitted_.find(c); it != emitted_.end()) return it->second;
    if (!on_stack_.insert(c).second) throw InternalError("extraction chose a cyclic term");
    auto it = best_.find(c);
    if (it == best_.end()) throw InternalError("e-class without an extractable term");
    const ENode& n = it->second.second;
    ir::NodeId id;
    if (n.op == Op::Const) {
      id = out_.add_const(eg_.const_payload(n.payload));
    } else if (n.op == Op::Input) {
      id = input_ids_.at(eg_.input_name(n.payload));
    } else {
      std::vector<ir::NodeId> xs;
      for (ClassId ch : n.children) xs.push_back(emit(ch));
      id = out_.add_op(n.op, std::move(xs));
    }
    on_stack_.erase(c);
    emitted_.emplace(c, id);
    return id;
  }

  const EGraph& eg_;
  const ir::Graph& original_;
  ir::Graph out_;
  std::map<ClassId, std::pair<std::uint64_t, ENode>> best_;
  std::map<ClassId, ir::NodeId> emitted_;
  std::set<ClassId> on_stack_;
  std::map<std::string, ir::NodeId> input_ids_;
};

}  // namespace

ir::Graph extract(const EGraph& eg, const ir::Graph& original, const std::vector<ClassId>& classes) {
  return Extractor(eg, original).run(classes);
}

FoldResult constant_fold(const ir::Graph& g) {
  FoldResult res;
  std::vector<std::optional<Tensor>> values(g.size());
  std::vector<ir::NodeId> remap(g.size());
  ir::Graph out;
  for (ir::NodeId id = 0; id < g.size(); ++id) {
    const ir::Node& n = g.node(id);
    if (n.op == Op::Const) {
      values[id] = *n.value;
      remap[id] = out.add_const(*n.value);
      continue;
    }
    if (n.op == Op::Input) {
      remap[id] = out.add_input(n.name, n.shape, n.nonneg);
      continue;
    }
    std::vector<ir::NodeId> xs;
    std::vector<const Tensor*> vals;
    for (ir::NodeId o : n.operands) {
      xs.push_back(remap[o]);
      vals.push_back(values[o] ? &*values[o] : nullptr);
    }
    const bool all_known = std::all_of(vals.begin(), vals.end(), [](const Tensor* t) { return t != nullptr; });
    if (n.const_flag && all_known) {
      try {
        Tensor v = runtime::apply_op(n.op, vals);
        if (!v.all_finite()) throw EvalError("non-finite result");
        remap[id] = out.add_const(v);
        values[id] = std::move(v);
        continue;
      } catch (const Error& e) {
        res.warnings.push_back("constant node " + std::to_string(id) + " (" + std::string(ir::op_name(n.op)) +
                               ") not folded: " + e.what());
      }
    }
    remap[id] = out.add_op(n.op, std::move(xs));
  }
  for (const auto& [name, id] : g.outputs()) out.add_output(name, remap[id]);
  res.graph = ir::prune(out);
  return res;
}

ir::Graph optimize(const ir::Graph& g, const SaturationLimits& limits, OptimizeReport* report) {
  OptimizeReport rep;
  const ir::Graph base = ir::prune(g);
  rep.cost_before = graph_cost(base);
  EGraph eg;
  const auto classes = add_graph(eg, base);
  rep.saturation = saturate(eg, default_rules(), limits);
  ir::Graph best = extract(eg, base, classes);
  if (graph_cost(best) >= rep.cost_before) {
    best = base;
    rep.kept_original = true;
  }
  FoldResult folded = constant_fold(best);
  rep.warnings = std::move(folded.warnings);
  ir::ir_shape_check(folded.graph);
  rep.cost_after = graph_cost(folded.graph);
  if (report != nullptr) *report = std::move(rep);
  return std::move(folded.graph);
}

}  // namespace chromac::opt
