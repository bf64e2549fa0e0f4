#pragma once

#include <array>
#include <string>
#include <vector>

#include "pframe/element.hpp"
#include "pframe/transform.hpp"

namespace pframe {

enum class Dof : int { u = 0, w = 1, phi = 2 };
enum class ElementEnd : int { a = 0, b = 1 };
enum class ConstraintKind { fixed, prescribed };

struct Constraint {
  int node = -1;
  Dof dof = Dof::u;
  ConstraintKind kind = ConstraintKind::fixed;
  std::vector<double> history;  ///< per-step targets (prescribed only)
};

struct NodalLoad {
  int node = -1;
  Dof dof = Dof::u;
  double value = 0.0;  ///< reference value, scaled by the load factor
};

/// Moment release at one element end: that end's rotation gets its own
/// equation instead of sharing the joint rotation.
struct Hinge {
  int element = -1;
  ElementEnd end = ElementEnd::a;
};

struct ElementDef {
  int node_a = -1;
  int node_b = -1;
  SectionProperties section;
  int segments = 1;
};

struct Model {
  std::vector<std::array<double, 2>> nodes;  ///< (x, z) joint coordinates
  std::vector<ElementDef> elements;
  std::vector<Constraint> constraints;
  std::vector<NodalLoad> loads;
  std::vector<Hinge> hinges;

  /// Structural consistency checks; throws ValidationError.
  void validate() const;
};

/// Equation numbering. Every node owns three DOF slots (u, w, phi); each
/// hinged element end appends one private rotation slot. Joint rotation
/// slots that no element end attaches to are dropped from the system.
class DofMap {
 public:
  enum Status : int { kFree = 0, kFixed = 1, kPrescribed = 2, kUnused = 3 };

  static DofMap build(const Model& model);

  int slot_count() const { return static_cast<int>(status_.size()); }
  int free_count() const { return n_free_; }

  int node_slot(int node, Dof dof) const { return 3 * node + static_cast<int>(dof); }

  /// Slots carrying the (u, w, phi) state of one element end; the rotation
  /// slot is the private one when the end is hinged.
  const std::array<int, 3>& end_slots(int element, ElementEnd end) const {
    return end_slots_[element][static_cast<int>(end)];
  }

  Status status(int slot) const { return status_[slot]; }
  int equation(int slot) const { return equation_[slot]; }
  /// Index into Model::constraints for fixed/prescribed slots, else -1.
  int constraint_index(int slot) const { return constraint_[slot]; }
  bool is_moment_slot(int slot) const { return moment_slot_[slot]; }
  const std::string& slot_name(int slot) const { return names_[slot]; }

 private:
  int n_nodes_ = 0;
  int n_free_ = 0;
  std::vector<Status> status_;
  std::vector<int> equation_;
  std::vector<int> constraint_;
  std::vector<bool> moment_slot_;
  std::vector<std::string> names_;
  std::vector<std::array<std::array<int, 3>, 2>> end_slots_;
};

}  // namespace pframe
