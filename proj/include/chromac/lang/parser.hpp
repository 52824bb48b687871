#pragma once

#include <string_view>

#include "chromac/lang/ast.hpp"

namespace chromac::lang {

/// Parses `.csl` source text.
///
///   input NAME : TYPE[d1, d2, ...]
///   NAME = expr
///   output NAME
///
/// Expressions use infix + - * /, `TYPE(e)` or `cast TYPE(e)` for casts, `TYPE([...])` for
/// array literals, `Pigment(absorption, scattering)`, `mix(c1, p1, c2, p2)`, `matmul(e, m)`
/// and channel access `e.c`. `#` starts a comment; newlines inside brackets are ignored.
///
/// Throws CompileError on syntax errors, unknown type names, duplicate bindings, unresolved
/// names and programs without an output.
[[nodiscard]] Program parse(std::string_view source);

}  // namespace chromac::lang
