#pragma once

#include <map>
#include <string>
#include <vector>

#include "chromac/lang/ast.hpp"

namespace chromac::lang {

/// A program with a shaped type (and the name of the typing rule that produced it) for
/// every expression.
struct TypedProgram {
  Program program;
  std::vector<ShapedType> types;   // indexed by ExprId
  std::vector<std::string> rules;  // indexed by ExprId
  std::map<std::string, ShapedType> bindings;

  [[nodiscard]] const ShapedType& type_of(ExprId id) const { return types.at(id); }
};

/// Checks every expression against the typing rules. Throws CompileError (type-mismatch,
/// dimension-mismatch, illegal-cast, unknown-channel) at the first violation.
[[nodiscard]] TypedProgram type_check(Program program);

/// parse followed by type_check.
[[nodiscard]] TypedProgram check_source(std::string_view source);

}  // namespace chromac::lang
