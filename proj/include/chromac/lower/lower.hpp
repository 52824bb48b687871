#pragma once

#include "chromac/ir/graph.hpp"
#include "chromac/lang/type_check.hpp"

namespace chromac::lower {

/// Translates a type-checked program into a tensor graph. Every value's tensor shape is its
/// erased type (dims followed by the channel axis). Gamma-encoded colors stay encoded
/// between statements and are linearized around arithmetic.
[[nodiscard]] ir::Graph lower(const lang::TypedProgram& tp);

}  // namespace chromac::lower
