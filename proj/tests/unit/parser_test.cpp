#include <gtest/gtest.h>

#include "chromac/lang/cast_graph.hpp"
#include "chromac/lang/parser.hpp"

namespace chromac::lang {
namespace {

ErrorClass parse_error(std::string_view src) {
  try {
    (void)parse(src);
  } catch (const CompileError& e) {
    return e.error_class();
  }
  ADD_FAILURE() << "parsed without error: " << src;
  return ErrorClass::SyntaxError;
}

TEST(Parse, MinimalProgram) {
  const Program p = parse("input a : sRGB[2,2]\nout = a + a\noutput out");
  EXPECT_EQ(p.inputs.size(), 1u);
  EXPECT_EQ(p.statements.size(), 1u);
  EXPECT_EQ(p.outputs.size(), 1u);
  EXPECT_EQ(p.inputs[0].type, (ShapedType{PhysicalType::sRGB, Shape{2, 2}}));
  const Expr& e = p.expr(p.statements[0].value);
  EXPECT_EQ(e.kind, ExprKind::Binary);
  EXPECT_EQ(e.op, BinaryOp::Add);
}

TEST(Parse, Interpolation) {
  const Program p = parse(
      "# Blend two images.\n"
      "input image1 : sRGB[1080, 1920]\n"
      "input image2 : sRGB[1080, 1920]\n"
      "mixed = image1 * 0.5 + image2 * 0.5\n"
      "output mixed\n");
  EXPECT_EQ(p.inputs.size(), 2u);
  EXPECT_EQ(p.statements.size(), 1u);
  const Expr& top = p.expr(p.statements[0].value);
  EXPECT_EQ(top.op, BinaryOp::Add);
  EXPECT_EQ(p.expr(top.args[0]).op, BinaryOp::Mul);
}

TEST(Parse, UnresolvedVariable) { EXPECT_EQ(parse_error("out = a + a\noutput out"), ErrorClass::UnresolvedVariable); }

TEST(Parse, Precedence) {
  const Program p = parse("input a : Matrix[2]\nb = a + a * a - a\noutput b");
  const Expr& top = p.expr(p.statements[0].value);
  EXPECT_EQ(top.op, BinaryOp::Sub);
  const Expr& left = p.expr(top.args[0]);
  EXPECT_EQ(left.op, BinaryOp::Add);
  EXPECT_EQ(p.expr(left.args[1]).op, BinaryOp::Mul);
}

TEST(Parse, CallForms) {
  const Program p = parse(
      "input k : Absorption[2]\n"
      "input s : Scattering[2]\n"
      "input x : XYZ[2]\n"
      "p = Pigment(k, s)\n"
      "q = mix(0.5, p, 0.5, p)\n"
      "r = cast Reflectance(q)\n"
      "m = matmul(x, Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))\n"
      "c = m.y\n"
      "output r\noutput c\n");
  EXPECT_EQ(p.expr(p.statements[0].value).kind, ExprKind::PigmentInit);
  EXPECT_EQ(p.expr(p.statements[1].value).kind, ExprKind::Mix);
  EXPECT_EQ(p.expr(p.statements[2].value).kind, ExprKind::Cast);
  EXPECT_EQ(p.expr(p.statements[2].value).type, PhysicalType::Reflectance);
  const Expr& mm = p.expr(p.statements[3].value);
  EXPECT_EQ(mm.kind, ExprKind::MatMul);
  const Expr& lit = p.expr(mm.args[1]);
  EXPECT_EQ(lit.kind, ExprKind::Literal);
  EXPECT_EQ(lit.literal_shape, (std::vector<std::int64_t>{3, 3}));
  EXPECT_EQ(lit.literal_values[4], 1.0);
  const Expr& ch = p.expr(p.statements[4].value);
  EXPECT_EQ(ch.kind, ExprKind::Channel);
  EXPECT_EQ(ch.name, "y");
}

TEST(Parse, NegativeNumbersAndMultilineLiterals) {
  const Program p = parse("c = Matrix([\n  -1.5, 2e-1,\n  3\n])\noutput c\n");
  const Expr& lit = p.expr(p.statements[0].value);
  EXPECT_EQ(lit.literal_values, (std::vector<double>{-1.5, 0.2, 3}));
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error(""), ErrorClass::NoOutput);
  EXPECT_EQ(parse_error("input a : CMYK[2]\noutput a"), ErrorClass::UnknownType);
  EXPECT_EQ(parse_error("input a : XYZ[2]\na = a + a\noutput a"), ErrorClass::DuplicateBinding);
  EXPECT_EQ(parse_error("input a : XYZ[2]\nb = a +\noutput b"), ErrorClass::SyntaxError);
  EXPECT_EQ(parse_error("input a : XYZ[0]\noutput a"), ErrorClass::SyntaxError);
  EXPECT_EQ(parse_error("c = Matrix([[1, 2], [3]])\noutput c"), ErrorClass::SyntaxError);
  EXPECT_EQ(parse_error("input a : XYZ[2]\noutput b"), ErrorClass::UnresolvedVariable);
}

TEST(Parse, ErrorLocation) {
  try {
    (void)parse("input a : XYZ[2]\nb = a + c\noutput b");
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.loc().line, 2);
    EXPECT_EQ(e.loc().col, 9);
    EXPECT_EQ(e.format("p.csl").rfind("p.csl:2:9: unresolved-variable: ", 0), 0u) << e.format("p.csl");
  }
}

TEST(CastGraph, PathExists) {
  EXPECT_TRUE(path_exists(PhysicalType::Light, PhysicalType::LMS));
  EXPECT_FALSE(path_exists(PhysicalType::LMS, PhysicalType::Light));
  EXPECT_TRUE(path_exists(PhysicalType::sRGB, PhysicalType::opRGB));
  EXPECT_FALSE(path_exists(PhysicalType::Chromaticity, PhysicalType::XYZ));
  EXPECT_FALSE(path_exists(PhysicalType::XYZ, PhysicalType::Matrix));
}

std::vector<CastStep> steps(PhysicalType a, PhysicalType b) {
  std::vector<CastStep> out;
  for (const auto& e : cast_path(a, b)) out.push_back(e.step);
  return out;
}

TEST(CastGraph, Paths) {
  EXPECT_EQ(steps(PhysicalType::LMS, PhysicalType::sRGB), (std::vector{CastStep::LmsToXyz, CastStep::XyzToSrgb}));
  EXPECT_TRUE(steps(PhysicalType::XYZ, PhysicalType::XYZ).empty());
  EXPECT_EQ(steps(PhysicalType::Light, PhysicalType::sRGB),
            (std::vector{CastStep::LightToLms, CastStep::LmsToXyz, CastStep::XyzToSrgb}));
  EXPECT_EQ(steps(PhysicalType::sRGB, PhysicalType::opRGB), (std::vector{CastStep::SrgbToXyz, CastStep::XyzToOpRgb}));
  EXPECT_EQ(steps(PhysicalType::LAB, PhysicalType::HSV),
            (std::vector{CastStep::LabToXyz, CastStep::XyzToSrgb, CastStep::SrgbToHsv}));
}

TEST(CastGraph, NoPathNamesBothTypes) {
  try {
    (void)cast_path(PhysicalType::LMS, PhysicalType::Light);
    FAIL();
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("LMS"), std::string::npos);
    EXPECT_NE(msg.find("Light"), std::string::npos);
  }
}

TEST(CastGraph, ShortestPathsAreUnique) { EXPECT_NO_THROW(verify_unique_shortest_paths()); }

}  // namespace
}  // namespace chromac::lang
