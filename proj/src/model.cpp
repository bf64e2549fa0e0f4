#include "pframe/model.hpp"

#include <cmath>
#include <set>
#include <string>

#include "pframe/errors.hpp"

namespace pframe {

namespace {

std::string dof_name(Dof d) {
  switch (d) {
    case Dof::u: return "u";
    case Dof::w: return "w";
    default: return "phi";
  }
}

}  // namespace

void Model::validate() const {
  const int n_nodes = static_cast<int>(nodes.size());
  const int n_elems = static_cast<int>(elements.size());
  if (n_nodes < 2) throw ValidationError("model: needs at least two nodes");
  if (n_elems < 1) throw ValidationError("model: needs at least one element");

  for (const auto& node : nodes)
    if (!std::isfinite(node[0]) || !std::isfinite(node[1]))
      throw ValidationError("model: non-finite node coordinate");

  std::vector<bool> connected(n_nodes, false);
  for (int e = 0; e < n_elems; ++e) {
    const ElementDef& el = elements[e];
    if (el.node_a < 0 || el.node_a >= n_nodes || el.node_b < 0 || el.node_b >= n_nodes)
      throw ValidationError("element " + std::to_string(e) + ": node index out of range");
    if (el.node_a == el.node_b)
      throw ValidationError("element " + std::to_string(e) + ": endpoints coincide");
    if (!(el.section.EA > 0.0) || !(el.section.EI > 0.0))
      throw ValidationError("element " + std::to_string(e) + ": section stiffnesses must be positive");
    if (el.segments < 1)
      throw ValidationError("element " + std::to_string(e) + ": segment count must be >= 1");
    connected[el.node_a] = connected[el.node_b] = true;
  }
  for (int n = 0; n < n_nodes; ++n)
    if (!connected[n])
      throw ValidationError("node " + std::to_string(n) + ": not connected to any element");

  std::set<std::pair<int, int>> seen;
  for (const Constraint& c : constraints) {
    if (c.node < 0 || c.node >= n_nodes)
      throw ValidationError("constraint: node index out of range");
    if (!seen.insert({c.node, static_cast<int>(c.dof)}).second)
      throw ValidationError("node " + std::to_string(c.node) + ": dof " +
                            dof_name(c.dof) + " constrained more than once");
    if (c.kind == ConstraintKind::prescribed && c.history.empty())
      throw ValidationError("node " + std::to_string(c.node) +
                            ": prescribed dof without a history");
  }
  for (const NodalLoad& l : loads) {
    if (l.node < 0 || l.node >= n_nodes)
      throw ValidationError("load: node index out of range");
    if (!std::isfinite(l.value)) throw ValidationError("load: non-finite value");
  }
  std::set<std::pair<int, int>> hseen;
  for (const Hinge& h : hinges) {
    if (h.element < 0 || h.element >= n_elems)
      throw ValidationError("hinge: element index out of range");
    if (!hseen.insert({h.element, static_cast<int>(h.end)}).second)
      throw ValidationError("hinge: duplicate release on element " +
                            std::to_string(h.element));
  }
}

DofMap DofMap::build(const Model& model) {
  model.validate();

  DofMap m;
  m.n_nodes_ = static_cast<int>(model.nodes.size());
  const int n_elems = static_cast<int>(model.elements.size());

  m.end_slots_.resize(n_elems);
  for (int e = 0; e < n_elems; ++e) {
    const ElementDef& el = model.elements[e];
    for (int end = 0; end < 2; ++end) {
      const int node = end == 0 ? el.node_a : el.node_b;
      m.end_slots_[e][end] = {3 * node, 3 * node + 1, 3 * node + 2};
    }
  }

  int n_slots = 3 * m.n_nodes_;
  m.names_.resize(n_slots);
  for (int n = 0; n < m.n_nodes_; ++n) {
    m.names_[3 * n] = "u" + std::to_string(n);
    m.names_[3 * n + 1] = "w" + std::to_string(n);
    m.names_[3 * n + 2] = "phi" + std::to_string(n);
  }
  for (const Hinge& h : model.hinges) {
    m.end_slots_[h.element][static_cast<int>(h.end)][2] = n_slots++;
    m.names_.push_back("hinge_e" + std::to_string(h.element) +
                       (h.end == ElementEnd::a ? "a" : "b"));
  }

  m.status_.assign(n_slots, kFree);
  m.equation_.assign(n_slots, -1);
  m.constraint_.assign(n_slots, -1);
  m.moment_slot_.assign(n_slots, false);
  for (int n = 0; n < m.n_nodes_; ++n) m.moment_slot_[3 * n + 2] = true;
  for (int s = 3 * m.n_nodes_; s < n_slots; ++s) m.moment_slot_[s] = true;

  // A joint rotation slot not rigidly attached to any element end carries no
  // stiffness and is dropped.
  std::vector<bool> rigid_attach(m.n_nodes_, false);
  for (int e = 0; e < n_elems; ++e) {
    if (m.end_slots_[e][0][2] < 3 * m.n_nodes_)
      rigid_attach[model.elements[e].node_a] = true;
    if (m.end_slots_[e][1][2] < 3 * m.n_nodes_)
      rigid_attach[model.elements[e].node_b] = true;
  }
  for (int n = 0; n < m.n_nodes_; ++n)
    if (!rigid_attach[n]) m.status_[3 * n + 2] = kUnused;

  for (int ci = 0; ci < static_cast<int>(model.constraints.size()); ++ci) {
    const Constraint& c = model.constraints[ci];
    const int slot = m.node_slot(c.node, c.dof);
    if (m.status_[slot] == kUnused)
      throw ValidationError("node " + std::to_string(c.node) +
                            ": constrained rotation has no rigid attachment");
    m.status_[slot] = c.kind == ConstraintKind::fixed ? kFixed : kPrescribed;
    m.constraint_[slot] = ci;
  }

  for (const NodalLoad& l : model.loads) {
    const int slot = m.node_slot(l.node, l.dof);
    if (m.status_[slot] == kUnused)
      throw ValidationError("node " + std::to_string(l.node) +
                            ": loaded rotation has no rigid attachment");
  }

  for (int s = 0; s < n_slots; ++s)
    if (m.status_[s] == kFree) m.equation_[s] = m.n_free_++;
  return m;
}

}  // namespace pframe
