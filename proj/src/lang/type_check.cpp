#include "chromac/lang/type_check.hpp"

#include "chromac/lang/cast_graph.hpp"
#include "chromac/lang/parser.hpp"

namespace chromac::lang {

namespace {

using P = PhysicalType;

struct Typed {
  ShapedType type;
  const char* rule;
};

class Checker {
 public:
  explicit Checker(TypedProgram& tp) : tp_(tp) {}

  void run() {
    const Program& p = tp_.program;
    tp_.types.assign(p.exprs.size(), ShapedType{P::Matrix, Shape{1}});
    tp_.rules.assign(p.exprs.size(), "");
    std::vector<bool> done(p.exprs.size(), false);
    for (const auto& in : p.inputs) tp_.bindings.emplace(in.name, in.type);
    for (const auto& st : p.statements) {
      visit(st.value, done);
      tp_.bindings.emplace(st.name, tp_.types[st.value]);
    }
  }

 private:
  void visit(ExprId id, std::vector<bool>& done) {
    if (done[id]) return;
    for (ExprId a : tp_.program.expr(id).args) visit(a, done);
    const Typed t = infer(tp_.program.expr(id));
    tp_.types[id] = t.type;
    tp_.rules[id] = t.rule;
    done[id] = true;
  }

  const ShapedType& arg(const Expr& e, std::size_t i) const { return tp_.types[e.args[i]]; }

  [[noreturn]] static void fail(ErrorClass c, const Expr& e, const std::string& msg) { throw CompileError(c, e.loc, msg); }

  static std::string pair(const ShapedType& a, const ShapedType& b) { return a.str() + " and " + b.str(); }

  Typed infer(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Variable: return {tp_.bindings.at(e.name), "Var"};
      case ExprKind::Number: return {{P::Matrix, Shape{1}}, "Scalar"};
      case ExprKind::Literal: return literal(e);
      case ExprKind::Cast: return cast(e);
      case ExprKind::PigmentInit: return pigment_init(e);
      case ExprKind::Mix: return mix(e);
      case ExprKind::Binary: return binary(e);
      case ExprKind::MatMul: return matmul(e);
      case ExprKind::Channel: return channel(e);
    }
    throw InternalError("unhandled expression kind");
  }

  static Typed literal(const Expr& e) {
    const auto& ls = e.literal_shape;
    if (e.type == P::Matrix) return {{P::Matrix, Shape(ls)}, "Literal"};
    const std::int64_t c = *channel_count(e.type);
    if (ls.back() != c) {
      fail(ErrorClass::DimensionMismatch, e,
           std::string(name(e.type)) + " literal needs " + std::to_string(c) + " values on its last axis, got " +
               std::to_string(ls.back()));
    }
    std::vector<std::int64_t> dims(ls.begin(), ls.end() - 1);
    if (dims.empty()) dims.push_back(1);
    return {{e.type, Shape(std::move(dims))}, "Literal"};
  }

  Typed cast(const Expr& e) const {
    const ShapedType& src = arg(e, 0);
    const P to = e.type;
    if (src.phys == to) return {src, "Cast"};
    if (to == P::Matrix) {
      if (src.phys == P::Pigment) fail(ErrorClass::IllegalCast, e, "cannot cast " + src.str() + " to Matrix");
      return {{P::Matrix, src.erased()}, "CastToMatrix"};
    }
    if (src.phys == P::Matrix) {
      if (to == P::Pigment) fail(ErrorClass::IllegalCast, e, "cannot cast " + src.str() + " to Pigment");
      const std::int64_t c = *channel_count(to);
      if (src.dims.rank() < 2 || src.dims.back() != c) {
        fail(ErrorClass::DimensionMismatch, e,
             "casting " + src.str() + " to " + std::string(name(to)) + " needs rank >= 2 with last axis " +
                 std::to_string(c));
      }
      return {{to, Shape(std::vector<std::int64_t>(src.dims.vec().begin(), src.dims.vec().end() - 1))},
              "CastFromMatrix"};
    }
    if (!path_exists(src.phys, to)) {
      fail(ErrorClass::IllegalCast, e,
           "no cast from " + std::string(name(src.phys)) + " to " + std::string(name(to)) + " (Cast rule)");
    }
    return {{to, src.dims}, "Cast"};
  }

  Typed pigment_init(const Expr& e) const {
    if (e.type != P::Pigment) {
      fail(ErrorClass::TypeMismatch, e, std::string(name(e.type)) + " has no two-argument constructor");
    }
    const ShapedType& k = arg(e, 0);
    const ShapedType& s = arg(e, 1);
    if (k.phys != P::Absorption || s.phys != P::Scattering) {
      fail(ErrorClass::TypeMismatch, e, "Pigment(absorption, scattering) got " + pair(k, s) + " (PgmtInit rule)");
    }
    if (k.dims != s.dims) fail(ErrorClass::DimensionMismatch, e, "Pigment parts differ: " + pair(k, s));
    return {{P::Pigment, k.dims}, "PgmtInit"};
  }

  Typed mix(const Expr& e) const {
    const ShapedType& c1 = arg(e, 0);
    const ShapedType& p1 = arg(e, 1);
    const ShapedType& c2 = arg(e, 2);
    const ShapedType& p2 = arg(e, 3);
    if (c1.phys != P::Matrix || c2.phys != P::Matrix || p1.phys != P::Pigment || p2.phys != P::Pigment) {
      fail(ErrorClass::TypeMismatch, e,
           "mix(Matrix, Pigment, Matrix, Pigment) got " + c1.str() + ", " + p1.str() + ", " + c2.str() + ", " +
               p2.str() + " (PgmtMix rule)");
    }
    if (p1.dims != p2.dims) fail(ErrorClass::DimensionMismatch, e, "mixed pigments differ: " + pair(p1, p2));
    if (c1.dims.numel() != 1 || c2.dims.numel() != 1) {
      fail(ErrorClass::DimensionMismatch, e, "mix concentrations must be scalars, got " + pair(c1, c2));
    }
    return {{P::Pigment, p1.dims}, "PgmtMix"};
  }

  Typed binary(const Expr& e) const {
    const ShapedType& a = arg(e, 0);
    const ShapedType& b = arg(e, 1);
    const std::string op(1, symbol(e.op));
    switch (e.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return additive(e, a, b, op);
      case BinaryOp::Mul: return multiplicative(e, a, b);
      case BinaryOp::Div:
        if (a.phys == P::Matrix && b.phys == P::Matrix) return matrix_ewise(e, a, b, "MatrixDiv");
        fail(ErrorClass::TypeMismatch, e, "'/' needs two Matrix operands, got " + pair(a, b));
    }
    throw InternalError("unhandled binary op");
  }

  static Typed matrix_ewise(const Expr& e, const ShapedType& a, const ShapedType& b, const char* rule) {
    auto s = broadcast_shapes(a.dims, b.dims);
    if (!s) fail(ErrorClass::DimensionMismatch, e, std::string("cannot broadcast ") + pair(a, b) + " (" + rule + " rule)");
    return {{P::Matrix, *s}, rule};
  }

  static Typed additive(const Expr& e, const ShapedType& a, const ShapedType& b, const std::string& op) {
    if (a.phys == P::Matrix && b.phys == P::Matrix) {
      return matrix_ewise(e, a, b, op == "+" ? "MatrixAdd" : "MatrixSub");
    }
    const char* rule = nullptr;
    if (a.phys == b.phys) {
      if (is_tristimulus(a.phys)) rule = op == "+" ? "TristimulusAdd" : "TristimulusSub";
      else if (is_perceptual(a.phys)) rule = op == "+" ? "PerceptualAdd" : "PerceptualSub";
      else if (a.phys == P::Light) rule = op == "+" ? "LightAdd" : "LightSub";
    }
    if (rule == nullptr) {
      fail(ErrorClass::TypeMismatch, e,
           "'" + op + "' needs two operands of the same tristimulus, perceptual, Light or Matrix type, got " +
               pair(a, b));
    }
    if (a.dims != b.dims) fail(ErrorClass::DimensionMismatch, e, "'" + op + "' operands differ: " + pair(a, b) + " (" + rule + " rule)");
    return {a, rule};
  }

  static Typed multiplicative(const Expr& e, const ShapedType& a, const ShapedType& b) {
    if (a.phys == P::Matrix && b.phys == P::Matrix) return matrix_ewise(e, a, b, "MatrixMul");
    const bool ab = a.phys == P::Light && b.phys == P::Reflectance;
    const bool ba = a.phys == P::Reflectance && b.phys == P::Light;
    if (ab || ba) {
      const ShapedType& light = ab ? a : b;
      const ShapedType& refl = ab ? b : a;
      if (light.dims == refl.dims) return {{P::Light, light.dims}, "Reflect"};
      if (light.dims.is_scalar()) return {{P::Light, refl.dims}, "Reflect"};
      fail(ErrorClass::DimensionMismatch, e, "reflection of " + pair(light, refl) + " (Reflect rule)");
    }
    const ShapedType* color = nullptr;
    const ShapedType* m = nullptr;
    if (b.phys == P::Matrix) {
      color = &a;
      m = &b;
    } else if (a.phys == P::Matrix) {
      color = &b;
      m = &a;
    }
    if (color != nullptr && is_tristimulus(color->phys)) {
      if (!broadcastable(m->dims, color->erased())) {
        fail(ErrorClass::DimensionMismatch, e, "cannot scale " + color->str() + " by " + m->str() + " (TriScale rule)");
      }
      return {*color, "TriScale"};
    }
    if (color != nullptr && is_perceptual(color->phys)) {
      if (m->dims.numel() != 1) {
        fail(ErrorClass::DimensionMismatch, e, "perceptual colors scale only by a scalar, got " + pair(*color, *m));
      }
      return {*color, "PerceptualScale"};
    }
    fail(ErrorClass::TypeMismatch, e, "'*' is not defined for " + pair(a, b));
  }

  Typed matmul(const Expr& e) const {
    const ShapedType& a = arg(e, 0);
    const ShapedType& m = arg(e, 1);
    if (m.phys == P::Matrix && is_tristimulus(a.phys)) {
      if (m.dims != Shape{3, 3}) {
        fail(ErrorClass::DimensionMismatch, e, "matmul of " + a.str() + " needs Matrix[3,3], got " + m.str());
      }
      return {a, "MatMul"};
    }
    if (a.phys == P::Matrix && m.phys == P::Matrix) {
      auto s = matmul_shape(a.dims, m.dims);
      if (!s) fail(ErrorClass::DimensionMismatch, e, "matmul shapes do not agree: " + pair(a, m));
      return {{P::Matrix, *s}, "MatMul"};
    }
    fail(ErrorClass::TypeMismatch, e, "matmul needs (tristimulus, Matrix) or (Matrix, Matrix), got " + pair(a, m));
  }

  Typed channel(const Expr& e) const {
    const ShapedType& v = arg(e, 0);
    if (v.phys == P::Matrix || !channel_index(v.phys, e.name)) {
      fail(ErrorClass::UnknownChannel, e, std::string(name(v.phys)) + " has no channel '" + e.name + "'");
    }
    return {{P::Matrix, v.dims.append(1)}, "Channel"};
  }

  TypedProgram& tp_;
};

}  // namespace

TypedProgram type_check(Program program) {
  TypedProgram tp;
  tp.program = std::move(program);
  Checker(tp).run();
  return tp;
}

TypedProgram check_source(std::string_view source) { return type_check(parse(source)); }

}  // namespace chromac::lang
