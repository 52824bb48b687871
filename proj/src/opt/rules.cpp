#include "chromac/opt/rules.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <algorithm>

#include "chromac/error.hpp"

namespace chromac::opt {

using ir::Op;

namespace {

// Relative to the literal, so 0 only matches exact zeros.
constexpr double kLiteralTolerance = 1e-12;

class PatternParser {
 public:
  PatternParser(std::string_view s, std::vector<std::string>& names) : s_(s), names_(names) {}

  Pattern run() {
    Pattern p = term();
    skip();
    if (i_ != s_.size()) fail("trailing text");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InternalError("bad pattern '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string atom() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
    if (start == i_) fail("expected an atom");
    return std::string(s_.substr(start, i_ - start));
  }
  Pattern term() {
    skip();
    Pattern p;
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      const std::string op = atom();
      auto parsed = ir::op_from_name(op);
      if (!parsed || ir::arity(*parsed) == 0) fail("unknown op " + op);
      p.kind = Pattern::Kind::Node;
      p.op = *parsed;
      for (std::size_t k = 0; k < ir::arity(p.op); ++k) p.children.push_back(term());
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return p;
    }
    const std::string a = atom();
    if (a[0] == '?') {
      p.kind = Pattern::Kind::Var;
      p.var = a;
      auto it = std::find(names_.begin(), names_.end(), a);
      p.slot = static_cast<std::size_t>(it - names_.begin());
      if (it == names_.end()) names_.push_back(a);
      if (p.slot >= Subst::kMaxVars) fail("too many variables");
      return p;
    }
    char* end = nullptr;
    p.kind = Pattern::Kind::Literal;
    p.literal = std::strtod(a.c_str(), &end);
    if (end != a.c_str() + a.size()) fail("bad literal " + a);
    return p;
  }

  std::string_view s_;
  std::vector<std::string>& names_;
  std::size_t i_ = 0;
};

bool literal_matches(const EGraph& eg, ClassId c, double lit) {
  const auto& v = eg.data(c).value;
  if (!v) return false;
  for (double x : v->data()) {
    if (std::abs(x - lit) > kLiteralTolerance * std::abs(lit)) return false;
  }
  return true;
}

struct OpOrder {
  bool operator()(const ENode& n, Op op) const { return n.op < op; }
  bool operator()(Op op, const ENode& n) const { return op < n.op; }
};

// Classes must be rebuilt so their nodes are sorted.
// Backtracking matcher over a stack of pending (pattern, class) pairs.
class Matcher {
 public:
  Matcher(const EGraph& eg, std::vector<Subst>& out, std::size_t limit, std::size_t* work)
      : eg_(eg), out_(out), limit_(limit), work_(work) {}

  void run(const Pattern& p, ClassId c) {
    todo_.push_back({&p, c});
    step(Subst{});
  }

 private:
  struct Pending {
    const Pattern* p;
    ClassId c;
  };

  bool done() const { return out_.size() >= limit_ || (work_ != nullptr && *work_ == 0); }

  void step(Subst s) {
    if (done()) return;
    if (work_ != nullptr) --*work_;
    if (todo_.empty()) {
      out_.push_back(s);
      return;
    }
    const Pending top = todo_.back();
    todo_.pop_back();
    const Pattern& p = *top.p;
    const ClassId c = eg_.find(top.c);
    switch (p.kind) {
      case Pattern::Kind::Var:
        if (!s.has(p.slot)) {
          Subst t = s;
          t.set(p.slot, c);
          step(t);
        } else if (eg_.find(s[p.slot]) == c) {
          step(s);
        }
        break;
      case Pattern::Kind::Literal:
        if (literal_matches(eg_, c, p.literal)) step(s);
        break;
      case Pattern::Kind::Node:
        const auto& nodes = eg_.eclass(c).nodes;
        const auto range = std::equal_range(nodes.begin(), nodes.end(), p.op, OpOrder{});
        for (auto it = range.first; it != range.second; ++it) {
          const ENode& n = *it;
          if (n.children.size() != p.children.size()) continue;
          const std::size_t mark = todo_.size();
          for (std::size_t k = n.children.size(); k-- > 0;) todo_.push_back({&p.children[k], n.children[k]});
          step(s);
          todo_.resize(mark);
          if (done()) break;
        }
        break;
    }
    todo_.push_back(top);
  }

  const EGraph& eg_;
  std::vector<Subst>& out_;
  std::size_t limit_;
  std::size_t* work_;
  std::vector<Pending> todo_;
};

bool is_const(const EGraph& eg, const Binding& s, const char* v) { return eg.data(s.at(v)).const_flag; }
bool is_nonneg(const EGraph& eg, const Binding& s, const char* v) { return eg.data(s.at(v)).nonneg; }
const Shape& shape(const EGraph& eg, const Binding& s, const char* v) { return eg.data(s.at(v)).shape; }

bool same_shape_as_match(const EGraph& eg, const Binding& s, ClassId m) { return shape(eg, s, "?x") == eg.data(m).shape; }

Rule rule(std::string name, std::string_view lhs, std::string_view rhs, Condition cond = {},
          std::vector<std::string> nonneg = {}) {
  Rule r;
  r.name = std::move(name);
  r.lhs = Pattern::parse(lhs, r.vars);
  const std::size_t bound = r.vars.size();
  r.rhs = Pattern::parse(rhs, r.vars);
  if (r.vars.size() != bound) throw InternalError("rule " + r.name + " introduces variables on its right side");
  r.condition = std::move(cond);
  r.nonneg_vars = std::move(nonneg);
  return r;
}

std::vector<Rule> build_rules() {
  std::vector<Rule> r;
  r.push_back(rule("add-comm", "(add ?a ?b)", "(add ?b ?a)"));
  r.push_back(rule("mul-comm", "(mul ?a ?b)", "(mul ?b ?a)"));
  r.push_back(rule("add-assoc", "(add (add ?a ?b) ?c)", "(add ?a (add ?b ?c))"));
  r.push_back(rule("add-assoc-rev", "(add ?a (add ?b ?c))", "(add (add ?a ?b) ?c)"));
  r.push_back(rule("mul-assoc", "(mul (mul ?a ?b) ?c)", "(mul ?a (mul ?b ?c))"));
  r.push_back(rule("mul-assoc-rev", "(mul ?a (mul ?b ?c))", "(mul (mul ?a ?b) ?c)"));
  r.push_back(rule("distribute", "(mul (add ?a ?b) ?c)", "(add (mul ?a ?c) (mul ?b ?c))"));
  r.push_back(rule("factor", "(add (mul ?a ?c) (mul ?b ?c))", "(mul (add ?a ?b) ?c)"));
  r.push_back(rule("matmul-assoc", "(matmul (matmul ?x ?a) ?b)", "(matmul ?x (matmul ?a ?b))"));
  r.push_back(rule("matmul-assoc-rev", "(matmul ?x (matmul ?a ?b))", "(matmul (matmul ?x ?a) ?b)"));
  r.push_back(rule("matmul-add-left", "(matmul (add ?x ?y) ?a)", "(add (matmul ?x ?a) (matmul ?y ?a))"));
  r.push_back(rule("matmul-add-left-rev", "(add (matmul ?x ?a) (matmul ?y ?a))", "(matmul (add ?x ?y) ?a)"));
  r.push_back(rule("matmul-add-right", "(matmul ?a (add ?x ?y))", "(add (matmul ?a ?x) (matmul ?a ?y))"));
  r.push_back(rule("matmul-add-right-rev", "(add (matmul ?a ?x) (matmul ?a ?y))", "(matmul ?a (add ?x ?y))"));
  r.push_back(rule(
      "pow-fuse", "(pow (pow ?x ?a) ?b)", "(pow ?x (mul ?a ?b))",
      [](const EGraph& eg, const Binding& s, ClassId) { return is_nonneg(eg, s, "?x"); }, {"?x"}));
  auto both_nonneg = [](const EGraph& eg, const Binding& s, ClassId) {
    return is_nonneg(eg, s, "?x") && is_nonneg(eg, s, "?y");
  };
  r.push_back(rule("pow-mul", "(pow (mul ?x ?y) ?a)", "(mul (pow ?x ?a) (pow ?y ?a))", both_nonneg, {"?x", "?y"}));
  r.push_back(rule("pow-mul-rev", "(mul (pow ?x ?a) (pow ?y ?a))", "(pow (mul ?x ?y) ?a)", both_nonneg, {"?x", "?y"}));
  r.push_back(rule("mul-one", "(mul ?x 1)", "?x", same_shape_as_match));
  r.push_back(rule("add-zero", "(add ?x 0)", "?x", same_shape_as_match));
  r.push_back(rule("pow-one", "(pow ?x 1)", "?x", same_shape_as_match));
  r.push_back(rule("div-const", "(div ?x ?c)", "(mul ?x (div 1 ?c))", [](const EGraph& eg, const Binding& s, ClassId) {
    const auto& v = eg.data(s.at("?c")).value;
    if (!is_const(eg, s, "?c") || !v) return false;
    for (double x : v->data()) {
      if (x == 0.0) return false;
    }
    return true;
  }));
  r.push_back(rule("matmul-hoist-out", "(mul (matmul ?x ?a) ?c)", "(matmul ?x (mul ?a ?c))",
                   [](const EGraph& eg, const Binding& s, ClassId m) {
                     // c may only scale the output columns.
                     const Shape c = shape(eg, s, "?c").strip_leading_ones();
                     return c.rank() == 1 && (c[0] == 1 || c[0] == eg.data(m).shape.back());
                   }));
  r.push_back(rule("matmul-hoist-in", "(matmul (mul ?x ?c) ?a)", "(matmul ?x (mul ?a ?c))",
                   [](const EGraph& eg, const Binding& s, ClassId) { return shape(eg, s, "?c").numel() == 1; }));
  return r;
}

}  // namespace

Pattern Pattern::parse(std::string_view text, std::vector<std::string>& names) {
  return PatternParser(text, names).run();
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<std::string> names;
  return parse(text, names);
}

ClassId Binding::at(std::string_view var) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == var) return subst[i];
  }
  throw InternalError("pattern variable " + std::string(var) + " is not bound");
}

std::string Pattern::str() const {
  switch (kind) {
    case Kind::Var: return var;
    case Kind::Literal: {
      std::string s = std::to_string(literal);
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
      return s;
    }
    case Kind::Node: {
      std::string s = "(" + std::string(ir::op_name(op));
      for (const auto& c : children) s += " " + c.str();
      return s + ")";
    }
  }
  return "";
}

std::vector<std::string> Pattern::vars() const {
  std::vector<std::string> out;
  if (kind == Kind::Var) return {var};
  for (const auto& c : children) {
    for (auto& v : c.vars()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
  return out;
}

const std::vector<Rule>& default_rules() {
  static const std::vector<Rule> rules = build_rules();
  return rules;
}

std::vector<Subst> match(const EGraph& eg, const Pattern& p, ClassId c, std::size_t limit) {
  std::vector<Subst> out;
  match_into(eg, p, c, out, limit, nullptr);
  return out;
}

void match_into(const EGraph& eg, const Pattern& p, ClassId c, std::vector<Subst>& out, std::size_t limit,
                std::size_t* work) {
  Matcher(eg, out, limit, work).run(p, c);
}

std::optional<Shape> pattern_shape(const EGraph& eg, const Pattern& p, const Subst& s) {
  switch (p.kind) {
    case Pattern::Kind::Var: return eg.data(s[p.slot]).shape;
    case Pattern::Kind::Literal: return Shape{1};
    case Pattern::Kind::Node: {
      std::vector<Shape> shapes;
      for (const auto& c : p.children) {
        auto cs = pattern_shape(eg, c, s);
        if (!cs) return std::nullopt;
        shapes.push_back(*cs);
      }
      return ir::infer_shape(p.op, shapes);
    }
  }
  return std::nullopt;
}

ClassId instantiate(EGraph& eg, const Pattern& p, const Subst& s) {
  switch (p.kind) {
    case Pattern::Kind::Var: return s[p.slot];
    case Pattern::Kind::Literal: return eg.add_const(Tensor::scalar(p.literal));
    case Pattern::Kind::Node: {
      ENode n{p.op, {}, 0};
      for (const auto& c : p.children) n.children.push_back(instantiate(eg, c, s));
      return eg.add(std::move(n));
    }
  }
  throw InternalError("bad pattern kind");
}

ir::NodeId instantiate(ir::Graph& g, const Pattern& p, const std::map<std::string, ir::NodeId>& vars) {
  switch (p.kind) {
    case Pattern::Kind::Var: return vars.at(p.var);
    case Pattern::Kind::Literal: return g.add_scalar(p.literal);
    case Pattern::Kind::Node: {
      std::vector<ir::NodeId> xs;
      for (const auto& c : p.children) xs.push_back(instantiate(g, c, vars));
      return g.add_op(p.op, std::move(xs));
    }
  }
  throw InternalError("bad pattern kind");
}

}  // namespace chromac::opt
