#pragma once

#include <array>
#include <limits>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chromac/opt/egraph.hpp"

namespace chromac::opt {

/// A term pattern: a variable (`?x`), a numeric literal matching a constant class whose
/// entries all equal it, or an op applied to sub-patterns.
struct Pattern {
  enum class Kind { Var, Literal, Node };
  Kind kind = Kind::Var;
  std::string var;
  std::size_t slot = 0;  // index of `var` in the rule's variable list
  double literal = 0.0;
  ir::Op op = ir::Op::Add;
  std::vector<Pattern> children;

  /// Parses an s-expression such as "(mul ?x (div 1 ?c))". Variables get slots in
  /// `names`, which is extended with unseen names.
  static Pattern parse(std::string_view text, std::vector<std::string>& names);
  static Pattern parse(std::string_view text);
  [[nodiscard]] std::string str() const;
  /// Variable names in first-occurrence order.
  [[nodiscard]] std::vector<std::string> vars() const;
};

/// Classes bound to pattern variables, by slot.
struct Subst {
  static constexpr std::size_t kMaxVars = 8;
  std::array<ClassId, kMaxVars> slots{};
  std::uint32_t bound = 0;

  [[nodiscard]] bool has(std::size_t slot) const { return (bound >> slot) & 1U; }
  void set(std::size_t slot, ClassId c) {
    slots[slot] = c;
    bound |= 1U << slot;
  }
  [[nodiscard]] ClassId operator[](std::size_t slot) const { return slots[slot]; }
};

/// A substitution together with the names of its slots.
struct Binding {
  const Subst& subst;
  const std::vector<std::string>& names;

  /// Class bound to variable `var` (e.g. "?x").
  [[nodiscard]] ClassId at(std::string_view var) const;
};

using Condition = std::function<bool(const EGraph&, const Binding&, ClassId matched)>;

struct Rule {
  std::string name;
  std::vector<std::string> vars;
  Pattern lhs;
  Pattern rhs;
  Condition condition;  // empty means always
  /// Variables whose bound values must be nonnegative for the rule to be sound.
  std::vector<std::string> nonneg_vars;
};

/// The default rewrite catalog.
[[nodiscard]] const std::vector<Rule>& default_rules();

/// All substitutions under which `p` matches class `c`. The e-graph must be rebuilt.
[[nodiscard]] std::vector<Subst> match(const EGraph& eg, const Pattern& p, ClassId c,
                                       std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Appends matches of `p` in class `c` to `out`, stopping once `out` holds `limit` entries
/// or `*work` search steps have been spent. `work` is decremented per step when given.
void match_into(const EGraph& eg, const Pattern& p, ClassId c, std::vector<Subst>& out,
                std::size_t limit = std::numeric_limits<std::size_t>::max(), std::size_t* work = nullptr);

/// Shape `p` would have under `s`, or nullopt if some op does not fit.
[[nodiscard]] std::optional<Shape> pattern_shape(const EGraph& eg, const Pattern& p, const Subst& s);

/// Adds the nodes of `p` under `s` and returns the resulting class.
ClassId instantiate(EGraph& eg, const Pattern& p, const Subst& s);

/// Builds `p` into an IR graph with the given node for each variable.
ir::NodeId instantiate(ir::Graph& g, const Pattern& p, const std::map<std::string, ir::NodeId>& vars);

}  // namespace chromac::opt
