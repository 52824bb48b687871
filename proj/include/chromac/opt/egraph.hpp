#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chromac/ir/graph.hpp"

namespace chromac::opt {

using ClassId = std::uint32_t;

/// An op with child e-classes. Leaves carry an index into the const or input table.
struct ENode {
  ir::Op op = ir::Op::Const;
  std::vector<ClassId> children;
  std::uint32_t payload = 0;

  friend bool operator==(const ENode&, const ENode&) = default;
  friend auto operator<=>(const ENode&, const ENode&) = default;
};

struct ENodeHash {
  std::size_t operator()(const ENode& n) const;
};

/// Per-class analysis. Members of a class always share a shape.
struct ClassData {
  Shape shape;
  bool const_flag = false;
  bool nonneg = false;
  /// Evaluated value of small constant classes.
  std::shared_ptr<const Tensor> value;
};

struct EClass {
  std::vector<ENode> nodes;
  ClassData data;
};

class EGraph {
 public:
  /// Largest constant (in elements) whose value the analysis tracks.
  static constexpr std::int64_t kValueCap = 4096;

  ClassId add_const(Tensor t);
  ClassId add_input(const std::string& name, const Shape& shape, bool nonneg);
  /// Adds an op node; throws ShapeError if the child shapes do not fit.
  ClassId add(ENode n);

  [[nodiscard]] ClassId find(ClassId id) const;
  /// Returns true if the two classes were distinct.
  bool merge(ClassId a, ClassId b);
  /// Restores congruence closure and recomputes the analysis.
  void rebuild();

  [[nodiscard]] const EClass& eclass(ClassId id) const { return classes_[find(id)]; }
  [[nodiscard]] const ClassData& data(ClassId id) const { return eclass(id).data; }
  [[nodiscard]] std::vector<ClassId> class_ids() const;
  [[nodiscard]] std::size_t node_count() const { return node_count_; }
  [[nodiscard]] std::size_t class_count() const;

  [[nodiscard]] const Tensor& const_payload(std::uint32_t i) const { return *consts_[i]; }
  [[nodiscard]] const std::string& input_name(std::uint32_t i) const { return inputs_[i].name; }
  [[nodiscard]] const Shape& input_shape(std::uint32_t i) const { return inputs_[i].shape; }
  [[nodiscard]] bool input_nonneg(std::uint32_t i) const { return inputs_[i].nonneg; }

  /// Shape the node would have, or nullopt.
  [[nodiscard]] std::optional<Shape> shape_of(ir::Op op, const std::vector<ClassId>& children) const;

 private:
  struct InputInfo {
    std::string name;
    Shape shape;
    bool nonneg;
  };

  ENode canonical(ENode n) const;
  ClassId insert(ENode n, ClassData data);
  ClassData compute(const ENode& n) const;
  bool refresh_analysis();

  mutable std::vector<ClassId> parent_;
  std::vector<EClass> classes_;
  std::unordered_map<ENode, ClassId, ENodeHash> memo_;
  std::vector<std::shared_ptr<const Tensor>> consts_;
  std::map<std::pair<std::vector<std::int64_t>, std::vector<double>>, std::uint32_t> const_index_;
  std::vector<InputInfo> inputs_;
  std::size_t node_count_ = 0;
};

/// Builds an e-graph holding `g`; returns the class of every node of `g`.
std::vector<ClassId> add_graph(EGraph& eg, const ir::Graph& g);

}  // namespace chromac::opt
