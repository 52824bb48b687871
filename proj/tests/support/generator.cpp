#include "support/generator.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "chromac/error.hpp"
#include "chromac/lang/cast_graph.hpp"
#include "chromac/lang/types.hpp"

namespace chromac::testsupport {

namespace {

using lang::PhysicalType;
using lang::ShapedType;
using P = PhysicalType;

const std::vector<Shape>& dim_pool() {
  static const std::vector<Shape> pool = {Shape{1}, Shape{2}, Shape{3}, Shape{2, 2}, Shape{2, 3}};
  return pool;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string dims_text(const Shape& s) {
  std::string t = "[";
  for (std::size_t i = 0; i < s.rank(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
  return t + "]";
}

/// Right-aligned suffixes of `s`, plus the scalar shape.
std::vector<Shape> broadcast_sources(const Shape& s) {
  std::vector<Shape> out = {Shape{1}};
  for (std::size_t i = 0; i < s.rank(); ++i) out.emplace_back(std::vector<std::int64_t>(s.vec().begin() + i, s.vec().end()));
  return out;
}

class ProgramBuilder {
 public:
  ProgramBuilder(std::mt19937_64& rng, const ProgramOptions& opt)
      : rng_(rng), opt_(opt), grid_(pick(rng, dim_pool())) {}

  std::string build() {
    const int n = std::uniform_int_distribution<int>(1, opt_.max_statements)(rng_);
    const std::vector<std::function<bool()>> productions = {
        [&] { return additive(); },    [&] { return reflect(); },  [&] { return tri_scale(); },
        [&] { return perceptual_scale(); }, [&] { return cast(); },     [&] { return cast_matrix(); },
        [&] { return pigment_init(); }, [&] { return mix(); },      [&] { return matmul(); },
        [&] { return channel(); },     [&] { return matrix_op(); },
    };
    while (statements_ < n) {
      if (!pick(rng_, productions)()) continue;
    }
    std::ostringstream s;
    for (const auto& l : inputs_) s << l << "\n";
    for (const auto& l : body_) s << l << "\n";
    s << "output " << bound_.back() << "\n";
    if (bound_.size() > 1 && chance(rng_, 0.3)) s << "output " << bound_[bound_.size() - 2] << "\n";
    return s.str();
  }

 private:
  struct Value {
    std::string name;
    ShapedType type;
  };

  Shape some_dims() { return chance(rng_, 0.75) ? grid_ : pick(rng_, dim_pool()); }

  std::string input(const ShapedType& t) {
    std::string name = "in" + std::to_string(inputs_.size());
    inputs_.push_back("input " + name + " : " + std::string(lang::name(t.phys)) + dims_text(t.dims));
    env_.push_back({name, t});
    return name;
  }

  std::optional<Value> existing(const std::function<bool(const ShapedType&)>& pred) {
    std::vector<Value> c;
    for (const auto& v : env_) {
      if (pred(v.type)) c.push_back(v);
    }
    if (c.empty()) return std::nullopt;
    return pick(rng_, c);
  }

  /// An existing value of exactly `t`, or a fresh input.
  std::string get(const ShapedType& t) {
    if (chance(rng_, 0.6)) {
      if (auto v = existing([&](const ShapedType& u) { return u == t; })) return v->name;
    }
    return input(t);
  }

  /// An existing value satisfying `pred`, or a fresh input of one of `fallback` types.
  Value get_any(const std::function<bool(const ShapedType&)>& pred, const std::vector<P>& fallback) {
    if (chance(rng_, 0.7)) {
      if (auto v = existing(pred)) return *v;
    }
    const ShapedType t{pick(rng_, fallback), some_dims()};
    return {input(t), t};
  }

  void bind(const std::string& expr, const ShapedType& t) {
    std::string name = "v" + std::to_string(statements_++);
    body_.push_back(name + " = " + expr);
    env_.push_back({name, t});
    bound_.push_back(name);
  }

  std::string number() {
    static const std::vector<std::string> nums = {"0.25", "0.5", "0.75", "1.5", "2", "3"};
    return pick(rng_, nums);
  }

  std::string ordered(const std::string& a, const std::string& op, const std::string& b) {
    return chance(rng_, 0.5) ? a + " " + op + " " + b : b + " " + op + " " + a;
  }

  bool additive() {
    static const std::vector<P> kinds = {P::XYZ, P::LMS, P::sRGB, P::opRGB, P::LAB, P::HSV, P::Light, P::Matrix};
    const Value a = get_any(
        [](const ShapedType& t) {
          return lang::is_tristimulus(t.phys) || lang::is_perceptual(t.phys) || t.phys == P::Light ||
                 t.phys == P::Matrix;
        },
        kinds);
    const bool physical = a.type.phys != P::Matrix;
    const std::string op = (!physical || !opt_.evaluable) && chance(rng_, 0.3) ? "-" : "+";
    if (!physical) {
      const ShapedType bt{P::Matrix, pick(rng_, broadcast_sources(a.type.dims))};
      const std::string b = get(bt);
      bind(chance(rng_, 0.5) ? a.name + " " + op + " " + b : b + " " + op + " " + a.name, {P::Matrix, a.type.dims});
      return true;
    }
    bind(a.name + " " + op + " " + get(a.type), a.type);
    return true;
  }

  bool reflect() {
    const Value r = get_any([](const ShapedType& t) { return t.phys == P::Reflectance; }, {P::Reflectance});
    const ShapedType lt{P::Light, chance(rng_, 0.25) ? Shape{1} : r.type.dims};
    bind(ordered(get(lt), "*", r.name), {P::Light, r.type.dims});
    return true;
  }

  bool tri_scale() {
    const Value c = get_any([](const ShapedType& t) { return lang::is_tristimulus(t.phys); },
                            {P::XYZ, P::LMS, P::sRGB, P::opRGB});
    std::string m;
    switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
      case 0: m = number(); break;
      case 1: m = "Matrix([" + number() + ", " + number() + ", " + number() + "])"; break;
      default: m = get({P::Matrix, pick(rng_, broadcast_sources(c.type.erased()))}); break;
    }
    bind(ordered(c.name, "*", m), c.type);
    return true;
  }

  bool perceptual_scale() {
    const Value c = get_any([](const ShapedType& t) { return lang::is_perceptual(t.phys); }, {P::LAB, P::HSV});
    bind(ordered(c.name, "*", number()), c.type);
    return true;
  }

  bool cast() {
    const Value v = get_any([](const ShapedType& t) { return t.phys != P::Matrix; },
                            {P::XYZ, P::LMS, P::sRGB, P::opRGB, P::LAB, P::HSV, P::Light, P::Pigment});
    std::vector<P> targets;
    for (P t : lang::kAllPhysicalTypes) {
      if (t != v.type.phys && t != P::Matrix && lang::path_exists(v.type.phys, t)) targets.push_back(t);
    }
    if (targets.empty()) return false;
    const P to = pick(rng_, targets);
    bind((chance(rng_, 0.3) ? "cast " : "") + std::string(lang::name(to)) + "(" + v.name + ")", {to, v.type.dims});
    return true;
  }

  bool cast_matrix() {
    if (chance(rng_, 0.5)) {
      const Value v = get_any([](const ShapedType& t) { return t.phys != P::Matrix && t.phys != P::Pigment; },
                              {P::XYZ, P::sRGB, P::LAB, P::Light, P::Chromaticity});
      bind("Matrix(" + v.name + ")", {P::Matrix, v.type.erased()});
      return true;
    }
    static const std::vector<P> targets = {P::XYZ, P::LMS, P::sRGB, P::opRGB, P::LAB, P::HSV, P::Light,
                                           P::Reflectance, P::Chromaticity, P::Scattering, P::Absorption};
    const P to = pick(rng_, targets);
    const std::int64_t c = *lang::channel_count(to);
    const auto v = existing([&](const ShapedType& t) {
      return t.phys == P::Matrix && t.dims.rank() >= 2 && t.dims.back() == c;
    });
    const Shape dims = some_dims();
    const std::string name = v ? v->name : input({P::Matrix, dims.append(c)});
    const auto& md = v ? v->type.dims : dims.append(c);
    bind(std::string(lang::name(to)) + "(" + name + ")",
         {to, Shape(std::vector<std::int64_t>(md.vec().begin(), md.vec().end() - 1))});
    return true;
  }

  bool pigment_init() {
    const Shape d = some_dims();
    bind("Pigment(" + get({P::Absorption, d}) + ", " + get({P::Scattering, d}) + ")", {P::Pigment, d});
    return true;
  }

  std::string concentration() {
    if (chance(rng_, 0.7)) return number();
    return get({P::Matrix, Shape{1}});
  }

  bool mix() {
    const Value p = get_any([](const ShapedType& t) { return t.phys == P::Pigment; }, {P::Pigment});
    const std::string c1 = concentration();
    const std::string c2 = concentration();
    bind("mix(" + c1 + ", " + p.name + ", " + c2 + ", " + get(p.type) + ")", p.type);
    return true;
  }

  bool matmul() {
    if (chance(rng_, 0.6)) {
      const Value c = get_any([](const ShapedType& t) { return lang::is_tristimulus(t.phys); },
                              {P::XYZ, P::LMS, P::sRGB, P::opRGB});
      std::string m;
      if (chance(rng_, 0.5)) {
        m = "Matrix([[" + number() + ", 0, 0], [0, " + number() + ", 0], [0.1, 0.2, " + number() + "]])";
      } else {
        m = get({P::Matrix, Shape{3, 3}});
      }
      bind("matmul(" + c.name + ", " + m + ")", c.type);
      return true;
    }
    const Value a = get_any([](const ShapedType& t) { return t.phys == P::Matrix; }, {P::Matrix});
    const std::int64_t k = a.type.dims.back();
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 3)(rng_);
    const std::string m = get({P::Matrix, Shape{k, n}});
    std::vector<std::int64_t> out = a.type.dims.vec();
    if (out.size() == 1) {
      out[0] = n;
    } else {
      out.back() = n;
    }
    bind("matmul(" + a.name + ", " + m + ")", {P::Matrix, Shape(out)});
    return true;
  }

  bool channel() {
    static const std::vector<std::string> names = {"x", "y", "z", "l", "m", "s", "r", "g", "b", "h", "v", "L", "a"};
    const Value v = get_any(
        [](const ShapedType& t) { return t.phys != P::Matrix && lang::channel_count(t.phys) <= 3; },
        {P::XYZ, P::LMS, P::sRGB, P::opRGB, P::LAB, P::HSV, P::Chromaticity});
    std::vector<std::string> valid;
    for (const auto& n : names) {
      if (lang::channel_index(v.type.phys, n)) valid.push_back(n);
    }
    if (valid.empty()) return false;
    bind(v.name + "." + pick(rng_, valid), {P::Matrix, v.type.dims.append(1)});
    return true;
  }

  bool matrix_op() {
    const Value a = get_any([](const ShapedType& t) { return t.phys == P::Matrix; }, {P::Matrix});
    const std::string b = get({P::Matrix, pick(rng_, broadcast_sources(a.type.dims))});
    const std::string op = chance(rng_, 0.5) ? "*" : "/";
    // Only the full-shape operand may sit on either side; the result keeps a's dims.
    bind(op == "*" ? ordered(a.name, op, b) : a.name + " / " + b, {P::Matrix, a.type.dims});
    return true;
  }

  std::mt19937_64& rng_;
  ProgramOptions opt_;
  Shape grid_;
  std::vector<std::string> inputs_;
  std::vector<std::string> body_;
  std::vector<Value> env_;
  std::vector<std::string> bound_;
  int statements_ = 0;
};

// Random graphs.

struct GNode {
  ir::NodeId id;
  bool positive;
};

class GraphBuilder {
 public:
  GraphBuilder(std::mt19937_64& rng, std::size_t max_nodes) : rng_(rng), max_nodes_(max_nodes) {
    static const std::vector<Shape> fulls = {Shape{3}, Shape{2, 3}, Shape{2, 2}, Shape{3, 2, 2}, Shape{2, 1, 3}};
    full_ = pick(rng, fulls);
  }

  RandomGraph build() {
    const std::size_t n_inputs = std::uniform_int_distribution<std::size_t>(1, 3)(rng_);
    for (std::size_t i = 0; i < n_inputs; ++i) {
      add_input(i == 0 ? full_ : pick(rng_, broadcast_sources(full_)));
    }
    int attempts = 0;
    while (out_.graph.size() + 4 <= max_nodes_ && attempts++ < 200) step();
    std::vector<GNode> ops;
    for (const auto& n : nodes_) {
      const ir::Op op = out_.graph.node(n.id).op;
      if (op != ir::Op::Const && op != ir::Op::Input) ops.push_back(n);
    }
    if (ops.empty()) {
      out_.graph.add_output("out0", nodes_.front().id);
    } else {
      out_.graph.add_output("out0", ops.back().id);
      if (ops.size() > 1 && chance(rng_, 0.4)) out_.graph.add_output("out1", pick(rng_, ops).id);
    }
    return std::move(out_);
  }

 private:
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Tensor random_tensor(const Shape& s, bool positive) {
    Tensor t(s);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = positive ? uniform(0.5, 2.0) : uniform(-2.0, 2.0);
    return t;
  }

  GNode add_input(const Shape& s) {
    const bool positive = chance(rng_, 0.6);
    const std::string name = "x" + std::to_string(out_.inputs.size());
    const ir::NodeId id = out_.graph.add_input(name, s, positive);
    out_.inputs.emplace(name, random_tensor(s, positive));
    nodes_.push_back({id, positive});
    return nodes_.back();
  }

  GNode add_const(const Shape& s, bool positive) {
    const ir::NodeId id = out_.graph.add_const(random_tensor(s, positive));
    nodes_.push_back({id, positive});
    return nodes_.back();
  }

  const Shape& shape(const GNode& n) const { return out_.graph.node(n.id).shape; }

  /// A fresh leaf or an existing node, positive if requested.
  GNode operand(bool need_positive) {
    std::vector<GNode> c;
    for (const auto& n : nodes_) {
      if (!need_positive || n.positive) c.push_back(n);
    }
    if (!c.empty() && chance(rng_, 0.7)) return pick(rng_, c);
    return add_const(pick(rng_, broadcast_sources(full_)), need_positive || chance(rng_, 0.5));
  }

  void record(const std::vector<GNode>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) out_.modes.insert(classify_broadcast(shape(xs[i]), shape(xs[j])));
    }
  }

  bool emit(ir::Op op, const std::vector<GNode>& xs, bool positive) {
    std::vector<ir::NodeId> ids;
    std::vector<Shape> shapes;
    for (const auto& x : xs) {
      ids.push_back(x.id);
      shapes.push_back(shape(x));
    }
    if (!ir::infer_shape(op, shapes)) return false;
    if (op != ir::Op::MatMul) record(xs);
    nodes_.push_back({out_.graph.add_op(op, ids), positive});
    return true;
  }

  void step() {
    using ir::Op;
    static const std::vector<Op> ops = {Op::Add, Op::Sub, Op::Mul, Op::Div,    Op::Pow,     Op::MatMul,
                                        Op::Max, Op::Min, Op::Select, Op::FloorMod};
    const Op op = pick(rng_, ops);
    switch (op) {
      case Op::Add:
      case Op::Mul: {
        const GNode a = operand(false), b = operand(false);
        emit(op, {a, b}, a.positive && b.positive);
        break;
      }
      case Op::Sub: emit(op, {operand(false), operand(false)}, false); break;
      case Op::Div: {
        const GNode a = operand(false);
        emit(op, {a, operand(true)}, a.positive);
        break;
      }
      case Op::Pow: {
        const GNode base = operand(false);
        Tensor e(Shape{1});
        e[0] = base.positive ? uniform(-1.5, 2.5) : static_cast<double>(std::uniform_int_distribution<int>(2, 3)(rng_));
        const ir::NodeId eid = out_.graph.add_const(e);
        nodes_.push_back({eid, e[0] > 0});
        emit(op, {base, nodes_.back()}, base.positive);
        break;
      }
      case Op::MatMul: {
        const GNode a = operand(false);
        const std::int64_t k = shape(a).back();
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 3)(rng_);
        const bool positive = chance(rng_, 0.5);
        const GNode b = chance(rng_, 0.5) ? add_const(Shape{k, n}, positive) : add_input(Shape{k, n});
        emit(op, {a, b}, a.positive && b.positive);
        break;
      }
      case Op::Max: {
        const GNode a = operand(false), b = operand(false);
        emit(op, {a, b}, a.positive || b.positive);
        break;
      }
      case Op::Min: {
        const GNode a = operand(false), b = operand(false);
        emit(op, {a, b}, a.positive && b.positive);
        break;
      }
      case Op::Select: {
        const GNode c = operand(false), a = operand(false), b = operand(false);
        emit(op, {c, a, b}, a.positive && b.positive);
        break;
      }
      case Op::FloorMod: emit(op, {operand(false), operand(true)}, false); break;
      default: break;
    }
  }

  std::mt19937_64& rng_;
  std::size_t max_nodes_;
  Shape full_;
  std::vector<GNode> nodes_;
  RandomGraph out_;
};

}  // namespace

std::string random_program(std::mt19937_64& rng, const ProgramOptions& opt) { return ProgramBuilder(rng, opt).build(); }

BroadcastMode classify_broadcast(const Shape& a, const Shape& b) {
  if (a == b) return BroadcastMode::Trivial;
  if (a.numel() == 1 || b.numel() == 1) return BroadcastMode::Scalar;
  return BroadcastMode::Subset;
}

RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes) { return GraphBuilder(rng, max_nodes).build(); }

}  // namespace chromac::testsupport
