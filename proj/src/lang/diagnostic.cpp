#include "chromac/lang/diagnostic.hpp"

namespace chromac::lang {

std::string_view error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::SyntaxError: return "syntax-error";
    case ErrorClass::DuplicateBinding: return "duplicate-binding";
    case ErrorClass::UnknownType: return "unknown-type";
    case ErrorClass::UnresolvedVariable: return "unresolved-variable";
    case ErrorClass::NoOutput: return "no-output";
    case ErrorClass::TypeMismatch: return "type-mismatch";
    case ErrorClass::DimensionMismatch: return "dimension-mismatch";
    case ErrorClass::IllegalCast: return "illegal-cast";
    case ErrorClass::UnknownChannel: return "unknown-channel";
  }
  return "error";
}

CompileError::CompileError(ErrorClass cls, SourceLoc loc, const std::string& message)
    : Error(std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + std::string(error_class_name(cls)) +
            ": " + message),
      cls_(cls),
      loc_(loc),
      message_(message) {}

std::string CompileError::format(std::string_view file) const {
  return std::string(file) + ":" + std::to_string(loc_.line) + ":" + std::to_string(loc_.col) + ": " +
         std::string(error_class_name(cls_)) + ": " + message_;
}

}  // namespace chromac::lang
