#include "chromac/lower/lower.hpp"

#include <cmath>
#include <map>

#include "chromac/color/colormath.hpp"
#include "chromac/error.hpp"
#include "chromac/lang/cast_graph.hpp"

namespace chromac::lower {

namespace {

using ir::NodeId;
using ir::Op;
using lang::ExprKind;
using lang::PhysicalType;
using P = lang::PhysicalType;

constexpr std::int64_t kBands = static_cast<std::int64_t>(color::kBands);
constexpr double kHueEpsilon = 1e-12;

/// Row-vector form of a column-convention 3x3: v_row * result = (m * v_col)^T.
Tensor row_form(const color::Mat3& m) {
  std::vector<double> d(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) d[static_cast<std::size_t>(r * 3 + c)] = m[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  }
  return Tensor::matrix(3, 3, std::move(d));
}

class Lowerer {
 public:
  explicit Lowerer(const lang::TypedProgram& tp) : tp_(tp) {}

  ir::Graph run() {
    const auto& p = tp_.program;
    for (const auto& in : p.inputs) {
      env_[in.name] = g_.add_input(in.name, in.type.erased(), lang::is_nonnegative_domain(in.type.phys));
    }
    for (const auto& st : p.statements) env_[st.name] = value(st.value);
    for (const auto& out : p.outputs) {
      const NodeId id = env_.at(out.name);
      const Shape expect = tp_.bindings.at(out.name).erased();
      if (!(g_.node(id).shape == expect)) {
        throw InternalError("lowered output '" + out.name + "' has shape " + g_.node(id).shape.str() +
                            " but its type erases to " + expect.str());
      }
      g_.add_output(out.name, id);
    }
    return std::move(g_);
  }

 private:
  NodeId op(Op o, NodeId a, NodeId b) { return g_.add_op(o, {a, b}); }
  NodeId k(double v) { return g_.add_scalar(v); }
  NodeId k(Tensor t) { return g_.add_const(std::move(t)); }
  bool nonneg(NodeId id) const { return g_.node(id).nonneg; }

  NodeId decode(NodeId v, color::GammaSpec gs) { return op(Op::Pow, op(Op::Div, v, k(gs.scale)), k(gs.gamma)); }

  NodeId encode(NodeId linear, color::GammaSpec gs) {
    if (!nonneg(linear)) linear = op(Op::Max, linear, k(0.0));
    return op(Op::Mul, op(Op::Pow, linear, k(1.0 / gs.gamma)), k(gs.scale));
  }

  static const color::GammaSpec* gamma_of(P t) {
    if (t == P::sRGB) return &color::kSrgbGamma;
    if (t == P::opRGB) return &color::kOpRgbGamma;
    return nullptr;
  }

  /// Runs `f` on the linear form of a tristimulus value and re-encodes if needed.
  template <typename F>
  NodeId linearized(P t, NodeId v, F&& f) {
    const color::GammaSpec* gs = gamma_of(t);
    if (gs == nullptr) return f(v);
    return encode(f(decode(v, *gs)), *gs);
  }

  const lang::ShapedType& type_of(lang::ExprId id) const { return tp_.type_of(id); }

  NodeId value(lang::ExprId id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    const NodeId n = compute(tp_.program.expr(id), id);
    const Shape expect = type_of(id).erased();
    if (!(g_.node(n).shape == expect)) {
      throw InternalError("lowering produced shape " + g_.node(n).shape.str() + " for a value of type " +
                          type_of(id).str());
    }
    memo_.emplace(id, n);
    return n;
  }

  NodeId compute(const lang::Expr& e, lang::ExprId id) {
    switch (e.kind) {
      case ExprKind::Variable: return env_.at(e.name);
      case ExprKind::Number: return k(e.number);
      case ExprKind::Literal: return k(Tensor(type_of(id).erased(), e.literal_values));
      case ExprKind::Cast: return cast(type_of(e.args[0]).phys, e.type, value(e.args[0]));
      case ExprKind::PigmentInit: return pigment_init(value(e.args[0]), value(e.args[1]));
      case ExprKind::Mix: return mix(e);
      case ExprKind::Binary: return binary(e);
      case ExprKind::MatMul: return matmul(e);
      case ExprKind::Channel: {
        const auto& src = type_of(e.args[0]);
        const std::int64_t c = *lang::channel_count(src.phys);
        const std::int64_t i = *lang::channel_index(src.phys, e.name);
        std::vector<double> sel(static_cast<std::size_t>(c), 0.0);
        sel[static_cast<std::size_t>(i)] = 1.0;
        return op(Op::MatMul, value(e.args[0]), k(Tensor(Shape{c, 1}, sel)));
      }
    }
    throw InternalError("no lowering recipe for expression");
  }

  NodeId binary(const lang::Expr& e) {
    const auto& ta = type_of(e.args[0]);
    const auto& tb = type_of(e.args[1]);
    NodeId a = value(e.args[0]);
    NodeId b = value(e.args[1]);
    switch (e.op) {
      case lang::BinaryOp::Add:
      case lang::BinaryOp::Sub: {
        const Op o = e.op == lang::BinaryOp::Add ? Op::Add : Op::Sub;
        const color::GammaSpec* gs = gamma_of(ta.phys);
        if (gs == nullptr || ta.phys != tb.phys) return op(o, a, b);
        return encode(op(o, decode(a, *gs), decode(b, *gs)), *gs);
      }
      case lang::BinaryOp::Mul: {
        if (ta.phys == P::Matrix && tb.phys != P::Matrix) {
          std::swap(a, b);
          return scale(tb.phys, a, b);
        }
        return scale(ta.phys, a, b);
      }
      case lang::BinaryOp::Div: return op(Op::Div, a, b);
    }
    throw InternalError("no lowering recipe for binary op");
  }

  // `v` has type t, `m` is the other operand (Matrix or Reflectance).
  NodeId scale(P t, NodeId v, NodeId m) {
    if (lang::is_tristimulus(t)) return linearized(t, v, [&](NodeId lin) { return op(Op::Mul, lin, m); });
    return op(Op::Mul, v, m);
  }

  NodeId matmul(const lang::Expr& e) {
    const P t = type_of(e.args[0]).phys;
    const NodeId v = value(e.args[0]);
    const NodeId m = value(e.args[1]);
    if (t == P::Matrix) return op(Op::MatMul, v, m);
    return linearized(t, v, [&](NodeId lin) { return op(Op::MatMul, lin, m); });
  }

  Tensor selector(bool scattering, bool to_pigment) {
    // Pigment layout: scattering bands 0..88, then absorption bands 89..177.
    const std::int64_t off = scattering ? 0 : kBands;
    Tensor t(to_pigment ? Shape{kBands, 2 * kBands} : Shape{2 * kBands, kBands});
    for (std::int64_t i = 0; i < kBands; ++i) {
      const std::int64_t r = to_pigment ? i : off + i;
      const std::int64_t c = to_pigment ? off + i : i;
      t[static_cast<std::size_t>(r * t.shape()[1] + c)] = 1.0;
    }
    return t;
  }

  NodeId pigment_init(NodeId absorption, NodeId scattering) {
    return op(Op::Add, op(Op::MatMul, scattering, k(selector(true, true))),
              op(Op::MatMul, absorption, k(selector(false, true))));
  }

  NodeId mix(const lang::Expr& e) {
    const NodeId c1 = value(e.args[0]);
    const NodeId p1 = value(e.args[1]);
    const NodeId c2 = value(e.args[2]);
    const NodeId p2 = value(e.args[3]);
    return op(Op::Div, op(Op::Add, op(Op::Mul, p1, c1), op(Op::Mul, p2, c2)), op(Op::Add, c1, c2));
  }

  NodeId cast(P from, P to, NodeId v) {
    // Matrix conversions reinterpret the same tensor.
    if (from == to || from == P::Matrix || to == P::Matrix) return v;
    for (const auto& edge : lang::cast_path(from, to)) v = step(edge.step, v);
    return v;
  }

  NodeId step(lang::CastStep s, NodeId v) {
    const auto& cm = color::constants();
    using S = lang::CastStep;
    switch (s) {
      case S::LightToLms: {
        std::vector<double> d;
        for (const auto& row : cm.cone_fundamentals) d.insert(d.end(), row.begin(), row.end());
        return op(Op::MatMul, v, k(Tensor::matrix(color::kBands, 3, std::move(d))));
      }
      case S::LmsToXyz: return op(Op::MatMul, v, k(row_form(cm.lms_to_xyz)));
      case S::XyzToLms: return op(Op::MatMul, v, k(row_form(cm.xyz_to_lms)));
      case S::XyzToSrgb: return encode(op(Op::MatMul, v, k(row_form(cm.xyz_to_srgb))), color::kSrgbGamma);
      case S::SrgbToXyz: return op(Op::MatMul, decode(v, color::kSrgbGamma), k(row_form(cm.srgb_to_xyz)));
      case S::XyzToOpRgb: return encode(op(Op::MatMul, v, k(row_form(cm.xyz_to_oprgb))), color::kOpRgbGamma);
      case S::OpRgbToXyz: return op(Op::MatMul, decode(v, color::kOpRgbGamma), k(row_form(cm.oprgb_to_xyz)));
      case S::XyzToLab: return xyz_to_lab(v);
      case S::LabToXyz: return lab_to_xyz(v);
      case S::SrgbToHsv: return srgb_to_hsv(v);
      case S::HsvToSrgb: return hsv_to_srgb(v);
      case S::XyzToChromaticity:
        return op(Op::Div, op(Op::MatMul, v, k(Tensor::matrix(3, 2, {1, 0, 0, 1, 0, 0}))),
                  op(Op::MatMul, v, k(Tensor::matrix(3, 2, {1, 1, 1, 1, 1, 1}))));
      case S::PigmentToScattering: return op(Op::MatMul, v, k(selector(true, false)));
      case S::PigmentToAbsorption: return op(Op::MatMul, v, k(selector(false, false)));
      case S::PigmentToReflectance: {
        const NodeId ks = op(Op::Div, step(S::PigmentToAbsorption, v), step(S::PigmentToScattering, v));
        const NodeId root = op(Op::Pow, op(Op::Add, op(Op::Mul, ks, ks), op(Op::Mul, ks, k(2.0))), k(0.5));
        return op(Op::Sub, op(Op::Add, ks, k(1.0)), root);
      }
    }
    throw InternalError("no lowering recipe for cast step");
  }

  NodeId xyz_to_lab(NodeId v) {
    const auto& wp = color::constants().whitepoint;
    NodeId t = op(Op::Mul, v, k(Tensor::vector({1.0 / wp[0], 1.0 / wp[1], 1.0 / wp[2]})));
    if (!nonneg(t)) t = op(Op::Max, t, k(0.0));
    const NodeId f = op(Op::Pow, t, k(1.0 / 3.0));
    // rows: fx, fy, fz; columns: L, a, b
    const Tensor m = Tensor::matrix(3, 3, {0, 500, 0, 116, -500, 200, 0, 0, -200});
    return op(Op::Add, op(Op::MatMul, f, k(m)), k(Tensor::vector({-16.0, 0.0, 0.0})));
  }

  NodeId lab_to_xyz(NodeId v) {
    const auto& wp = color::constants().whitepoint;
    // rows: L+16, a, b; columns: fx, fy, fz
    const Tensor m = Tensor::matrix(3, 3, {1.0 / 116, 1.0 / 116, 1.0 / 116, 1.0 / 500, 0, 0, 0, 0, -1.0 / 200});
    const NodeId f = op(Op::MatMul, op(Op::Add, v, k(Tensor::vector({16.0, 0.0, 0.0}))), k(m));
    return op(Op::Mul, op(Op::Pow, f, k(3.0)), k(Tensor::vector({wp[0], wp[1], wp[2]})));
  }

  NodeId column(NodeId v, int i) {
    std::vector<double> sel(3, 0.0);
    sel[static_cast<std::size_t>(i)] = 1.0;
    return op(Op::MatMul, v, k(Tensor(Shape{3, 1}, sel)));
  }

  NodeId srgb_to_hsv(NodeId v) {
    const NodeId x = op(Op::Div, v, k(255.0));
    const NodeId r = column(x, 0);
    const NodeId g = column(x, 1);
    const NodeId b = column(x, 2);
    const NodeId hi = op(Op::Max, op(Op::Max, r, g), b);
    const NodeId lo = op(Op::Min, op(Op::Min, r, g), b);
    const NodeId chroma = op(Op::Sub, hi, lo);
    const NodeId s = op(Op::Div, chroma, op(Op::Max, hi, k(kHueEpsilon)));
    const NodeId cs = op(Op::Max, chroma, k(kHueEpsilon));
    const NodeId hr = op(Op::FloorMod, op(Op::Div, op(Op::Sub, g, b), cs), k(6.0));
    const NodeId hg = op(Op::Add, op(Op::Div, op(Op::Sub, b, r), cs), k(2.0));
    const NodeId hb = op(Op::Add, op(Op::Div, op(Op::Sub, r, g), cs), k(4.0));
    const NodeId not_green = op(Op::Select, {op(Op::Sub, hi, g), hb, hg});
    const NodeId sector = op(Op::Select, {op(Op::Sub, hi, r), not_green, hr});
    const NodeId h = op(Op::FloorMod, op(Op::Mul, sector, k(60.0)), k(360.0));
    return op(Op::Add, op(Op::Add, op(Op::MatMul, h, k(Tensor::matrix(1, 3, {1, 0, 0}))),
                          op(Op::MatMul, s, k(Tensor::matrix(1, 3, {0, 1, 0})))),
              op(Op::MatMul, hi, k(Tensor::matrix(1, 3, {0, 0, 1}))));
  }

  NodeId op(Op o, std::vector<NodeId> xs) { return g_.add_op(o, std::move(xs)); }

  NodeId hsv_to_srgb(NodeId v) {
    // Each of H/60, S and V replicated across three channels.
    const double s = 1.0 / 60.0;
    const NodeId h6 = op(Op::MatMul, v, k(Tensor::matrix(3, 3, {s, s, s, 0, 0, 0, 0, 0, 0})));
    const NodeId sat = op(Op::MatMul, v, k(Tensor::matrix(3, 3, {0, 0, 0, 1, 1, 1, 0, 0, 0})));
    const NodeId val = op(Op::MatMul, v, k(Tensor::matrix(3, 3, {0, 0, 0, 0, 0, 0, 1, 1, 1})));
    const NodeId kk = op(Op::FloorMod, op(Op::Add, h6, k(Tensor::vector({5.0, 3.0, 1.0}))), k(6.0));
    const NodeId w = op(Op::Max, op(Op::Min, op(Op::Min, kk, op(Op::Sub, k(4.0), kk)), k(1.0)), k(0.0));
    const NodeId rgb = op(Op::Sub, val, op(Op::Mul, op(Op::Mul, val, sat), w));
    return op(Op::Mul, rgb, k(255.0));
  }

  const lang::TypedProgram& tp_;
  ir::Graph g_;
  std::map<std::string, NodeId> env_;
  std::map<lang::ExprId, NodeId> memo_;
};

}  // namespace

ir::Graph lower(const lang::TypedProgram& tp) { return Lowerer(tp).run(); }

}  // namespace chromac::lower
