#include "chromac/lang/parser.hpp"

#include <charconv>
#include <cctype>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>

namespace chromac::lang {

char symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

namespace {

enum class Tok { Ident, Number, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      const SourceLoc loc{line_, col_};
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '\n') {
        if (depth == 0) out.push_back({Tok::Newline, "\n", 0.0, loc});
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string s;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          s += src_[pos_];
          advance();
        }
        out.push_back({Tok::Ident, std::move(s), 0.0, loc});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        out.push_back(number(loc));
      } else if (std::string_view("()[],.:=+-*/").find(c) != std::string_view::npos) {
        if (c == '(' || c == '[') ++depth;
        if ((c == ')' || c == ']') && depth > 0) --depth;
        out.push_back({Tok::Punct, std::string(1, c), 0.0, loc});
        advance();
      } else {
        throw CompileError(ErrorClass::SyntaxError, loc, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({Tok::Newline, "\n", 0.0, {line_, col_}});
    out.push_back({Tok::End, "", 0.0, {line_, col_}});
    return out;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token number(SourceLoc loc) {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      digits();
    }
    std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      throw CompileError(ErrorClass::SyntaxError, loc, "malformed number '" + text + "'");
    }
    return {Tok::Number, std::move(text), v, loc};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++pos_;
        continue;
      }
      statement();
    }
    if (prog_.outputs.empty()) {
      throw CompileError(ErrorClass::NoOutput, peek().loc, "no output declared");
    }
    return std::move(prog_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }

  const Token& expect_punct(const char* p) {
    if (!is_punct(p)) error_here(std::string("expected '") + p + "'");
    return toks_[pos_++];
  }

  const Token& expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) error_here(std::string("expected ") + what);
    return toks_[pos_++];
  }

  [[noreturn]] void error_here(const std::string& msg) const {
    const auto& t = peek();
    const std::string found = t.kind == Tok::End ? "end of file" : t.kind == Tok::Newline ? "end of line" : "'" + t.text + "'";
    throw CompileError(ErrorClass::SyntaxError, t.loc, msg + ", found " + found);
  }

  void end_of_statement() {
    if (peek().kind != Tok::Newline) error_here("expected end of statement");
    ++pos_;
  }

  void bind(const std::string& name, SourceLoc loc) {
    if (!bound_.insert(name).second) {
      throw CompileError(ErrorClass::DuplicateBinding, loc, "'" + name + "' is already bound");
    }
  }

  static bool is_keyword(const std::string& s) {
    return s == "input" || s == "output" || s == "cast" || s == "mix" || s == "matmul";
  }

  void statement() {
    const Token& head = peek();
    if (head.kind == Tok::Ident && head.text == "input" && peek(1).kind == Tok::Ident) {
      ++pos_;
      input_decl();
    } else if (head.kind == Tok::Ident && head.text == "output" && peek(1).kind == Tok::Ident) {
      ++pos_;
      const Token& n = expect_ident("an output name");
      if (!bound_.count(n.text)) {
        throw CompileError(ErrorClass::UnresolvedVariable, n.loc, "output '" + n.text + "' is not bound");
      }
      for (const auto& o : prog_.outputs) {
        if (o.name == n.text) {
          throw CompileError(ErrorClass::DuplicateBinding, n.loc, "'" + n.text + "' is already an output");
        }
      }
      prog_.outputs.push_back({n.text, n.loc});
      end_of_statement();
    } else if (head.kind == Tok::Ident && is_punct("=", 1)) {
      if (is_keyword(head.text)) error_here("expected a statement");
      ++pos_;
      ++pos_;
      const ExprId value = expr();
      bind(head.text, head.loc);
      prog_.statements.push_back({head.text, value, head.loc});
      end_of_statement();
    } else {
      error_here("expected 'input', 'output' or an assignment");
    }
  }

  PhysicalType type_name(const Token& t) {
    auto p = physical_type_from_name(t.text);
    if (!p) throw CompileError(ErrorClass::UnknownType, t.loc, "unknown type '" + t.text + "'");
    return *p;
  }

  void input_decl() {
    const Token& n = expect_ident("an input name");
    if (is_keyword(n.text)) throw CompileError(ErrorClass::SyntaxError, n.loc, "'" + n.text + "' is reserved");
    expect_punct(":");
    const Token& tn = expect_ident("a type name");
    const PhysicalType phys = type_name(tn);
    expect_punct("[");
    std::vector<std::int64_t> dims;
    do {
      if (peek().kind != Tok::Number) error_here("expected a dimension");
      const Token& d = toks_[pos_++];
      if (d.number < 1 || d.number != static_cast<double>(static_cast<std::int64_t>(d.number))) {
        throw CompileError(ErrorClass::SyntaxError, d.loc, "dimensions must be positive integers");
      }
      dims.push_back(static_cast<std::int64_t>(d.number));
    } while (is_punct(",") && (++pos_, true));
    expect_punct("]");
    bind(n.text, n.loc);
    prog_.inputs.push_back({n.text, ShapedType{phys, Shape(std::move(dims))}, n.loc});
    end_of_statement();
  }

  ExprId push(Expr e) {
    prog_.exprs.push_back(std::move(e));
    return static_cast<ExprId>(prog_.exprs.size() - 1);
  }

  ExprId expr() {
    ExprId lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const Token& op = toks_[pos_++];
      const ExprId rhs = term();
      lhs = binary(op.text == "+" ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs, op.loc);
    }
    return lhs;
  }

  ExprId term() {
    ExprId lhs = postfix();
    while (is_punct("*") || is_punct("/")) {
      const Token& op = toks_[pos_++];
      const ExprId rhs = postfix();
      lhs = binary(op.text == "*" ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs, op.loc);
    }
    return lhs;
  }

  ExprId binary(BinaryOp op, ExprId l, ExprId r, SourceLoc loc) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.op = op;
    e.loc = loc;
    e.args = {l, r};
    return push(std::move(e));
  }

  ExprId postfix() {
    ExprId base = primary();
    while (is_punct(".")) {
      ++pos_;
      const Token& c = expect_ident("a channel name");
      Expr e;
      e.kind = ExprKind::Channel;
      e.loc = c.loc;
      e.name = c.text;
      e.args = {base};
      base = push(std::move(e));
    }
    return base;
  }

  std::vector<ExprId> call_args() {
    expect_punct("(");
    std::vector<ExprId> args;
    if (!is_punct(")")) {
      args.push_back(expr());
      while (is_punct(",")) {
        ++pos_;
        args.push_back(expr());
      }
    }
    expect_punct(")");
    return args;
  }

  double signed_number() {
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      ++pos_;
    }
    if (peek().kind != Tok::Number) error_here("expected a number");
    const double v = toks_[pos_++].number;
    return neg ? -v : v;
  }

  // Nested list of numbers; records the nesting shape and checks it is rectangular.
  void array(std::vector<std::int64_t>& shape, std::vector<double>& values, std::size_t depth) {
    const Token& open = expect_punct("[");
    std::int64_t count = 0;
    if (is_punct("]")) throw CompileError(ErrorClass::SyntaxError, open.loc, "empty array literal");
    do {
      if (is_punct("[")) {
        if (depth + 1 > shape.size() && count == 0 && depth == shape.size()) {
          // first element at this depth defines nesting; handled by recursion
        }
        array(shape, values, depth + 1);
      } else {
        if (shape.size() > depth + 1) {
          throw CompileError(ErrorClass::SyntaxError, peek().loc, "ragged array literal");
        }
        if (shape.size() == depth) shape.push_back(-1);  // leaf marker
        values.push_back(signed_number());
      }
      ++count;
    } while (is_punct(",") && (++pos_, true));
    expect_punct("]");
    // Record or verify the extent of this axis.
    if (extents_.size() <= depth) extents_.resize(depth + 1, -1);
    if (extents_[depth] == -1) {
      extents_[depth] = count;
    } else if (extents_[depth] != count) {
      throw CompileError(ErrorClass::SyntaxError, open.loc, "ragged array literal");
    }
  }

  ExprId literal(PhysicalType t, SourceLoc loc) {
    Expr e;
    e.kind = ExprKind::Literal;
    e.type = t;
    e.loc = loc;
    std::vector<std::int64_t> leaf_marker;
    extents_.clear();
    array(leaf_marker, e.literal_values, 0);
    e.literal_shape = extents_;
    std::int64_t n = 1;
    for (auto d : e.literal_shape) n *= d;
    if (n != static_cast<std::int64_t>(e.literal_values.size())) {
      throw CompileError(ErrorClass::SyntaxError, loc, "ragged array literal");
    }
    expect_punct(")");
    return push(std::move(e));
  }

  ExprId type_call(PhysicalType t, SourceLoc loc, bool explicit_cast) {
    if (!explicit_cast && is_punct("(") && is_punct("[", 1)) {
      ++pos_;
      return literal(t, loc);
    }
    auto args = call_args();
    Expr e;
    e.type = t;
    e.loc = loc;
    e.args = args;
    if (args.size() == 1) {
      e.kind = ExprKind::Cast;
    } else if (args.size() == 2 && !explicit_cast) {
      e.kind = ExprKind::PigmentInit;
    } else {
      throw CompileError(ErrorClass::SyntaxError, loc,
                         std::string(name(t)) + "(...) takes one argument" + (explicit_cast ? "" : " (or two for Pigment)"));
    }
    return push(std::move(e));
  }

  ExprId primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number || (is_punct("-") && peek(1).kind == Tok::Number)) {
      Expr e;
      e.kind = ExprKind::Number;
      e.loc = t.loc;
      e.number = signed_number();
      return push(std::move(e));
    }
    if (is_punct("(")) {
      ++pos_;
      const ExprId inner = expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind != Tok::Ident) error_here("expected an expression");
    ++pos_;
    if (t.text == "cast") {
      const Token& tn = expect_ident("a type name");
      return type_call(type_name(tn), tn.loc, true);
    }
    if (t.text == "mix" || t.text == "matmul") {
      auto args = call_args();
      const std::size_t want = t.text == "mix" ? 4 : 2;
      if (args.size() != want) {
        throw CompileError(ErrorClass::SyntaxError, t.loc,
                           t.text + " takes " + std::to_string(want) + " arguments, got " + std::to_string(args.size()));
      }
      Expr e;
      e.kind = t.text == "mix" ? ExprKind::Mix : ExprKind::MatMul;
      e.loc = t.loc;
      e.args = std::move(args);
      return push(std::move(e));
    }
    if (is_punct("(")) {
      auto phys = physical_type_from_name(t.text);
      if (!phys) throw CompileError(ErrorClass::UnknownType, t.loc, "unknown type or function '" + t.text + "'");
      return type_call(*phys, t.loc, false);
    }
    if (is_keyword(t.text)) throw CompileError(ErrorClass::SyntaxError, t.loc, "'" + t.text + "' is reserved");
    if (!bound_.count(t.text)) {
      throw CompileError(ErrorClass::UnresolvedVariable, t.loc, "'" + t.text + "' is not bound");
    }
    Expr e;
    e.kind = ExprKind::Variable;
    e.loc = t.loc;
    e.name = t.text;
    return push(std::move(e));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program prog_;
  std::set<std::string> bound_;
  std::vector<std::int64_t> extents_;
};

}  // namespace

Program parse(std::string_view source) { return Parser(Lexer(source).run()).run(); }

}  // namespace chromac::lang
