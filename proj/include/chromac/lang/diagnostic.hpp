#pragma once

#include <string>
#include <string_view>

#include "chromac/error.hpp"

namespace chromac::lang {

struct SourceLoc {
  int line = 1;
  int col = 1;
};

/// Error classes reported by the frontend. The spelling is part of the CLI output contract.
enum class ErrorClass {
  SyntaxError,
  DuplicateBinding,
  UnknownType,
  UnresolvedVariable,
  NoOutput,
  TypeMismatch,
  DimensionMismatch,
  IllegalCast,
  UnknownChannel,
};

[[nodiscard]] std::string_view error_class_name(ErrorClass c);

/// A located parse or type error.
class CompileError : public Error {
 public:
  CompileError(ErrorClass cls, SourceLoc loc, const std::string& message);

  [[nodiscard]] ErrorClass error_class() const { return cls_; }
  [[nodiscard]] SourceLoc loc() const { return loc_; }
  [[nodiscard]] const std::string& message() const { return message_; }
  /// `file:line:col: error-class: message`
  [[nodiscard]] std::string format(std::string_view file) const;

 private:
  ErrorClass cls_;
  SourceLoc loc_;
  std::string message_;
};

}  // namespace chromac::lang
