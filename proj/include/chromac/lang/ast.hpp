#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chromac/lang/diagnostic.hpp"
#include "chromac/lang/types.hpp"

namespace chromac::lang {

using ExprId = std::uint32_t;

enum class ExprKind {
  Variable,     // x
  Number,       // 0.5 (a Matrix[1] scalar)
  Literal,      // T([...]) array construction
  Cast,         // T(v) or cast T(v)
  PigmentInit,  // Pigment(absorption, scattering)
  Mix,          // mix(c1, p1, c2, p2)
  Binary,       // v op v
  MatMul,       // matmul(v, m)
  Channel,      // v.c
};

enum class BinaryOp { Add, Sub, Mul, Div };

[[nodiscard]] char symbol(BinaryOp op);

struct Expr {
  ExprKind kind = ExprKind::Number;
  SourceLoc loc;
  std::string name;  // variable or channel name
  double number = 0.0;
  PhysicalType type = PhysicalType::Matrix;  // Literal / Cast / PigmentInit target
  std::vector<std::int64_t> literal_shape;   // nesting shape of a Literal's array
  std::vector<double> literal_values;        // row-major
  BinaryOp op = BinaryOp::Add;
  std::vector<ExprId> args;
};

struct InputDecl {
  std::string name;
  ShapedType type;
  SourceLoc loc;
};

struct Statement {
  std::string name;
  ExprId value;
  SourceLoc loc;
};

struct OutputDecl {
  std::string name;
  SourceLoc loc;
};

/// A parsed program. Names are bound exactly once; expressions live in `exprs`
/// and refer to each other by index.
struct Program {
  std::vector<InputDecl> inputs;
  std::vector<Statement> statements;
  std::vector<OutputDecl> outputs;
  std::vector<Expr> exprs;

  [[nodiscard]] const Expr& expr(ExprId id) const { return exprs.at(id); }
};

}  // namespace chromac::lang
