#include "pframe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pframe/errors.hpp"

namespace pframe {

namespace {

struct ScaleFactors {
  double force;   // multiplies force residuals
  double moment;  // multiplies moment residuals
};

// Residual scaling: unbalanced forces normalized by EI/L^2 of the first
// element, moments additionally by L.
ScaleFactors residual_scaling(const Model& model) {
  const double L = ElementGeometry::from_coords(
                       model.nodes[model.elements[0].node_a][0],
                       model.nodes[model.elements[0].node_a][1],
                       model.nodes[model.elements[0].node_b][0],
                       model.nodes[model.elements[0].node_b][1])
                       .length;
  const double EI = model.elements[0].section.EI;
  return {L * L / EI, L / EI};
}

std::vector<ElementGeometry> element_geometries(const Model& model) {
  std::vector<ElementGeometry> g;
  g.reserve(model.elements.size());
  for (const ElementDef& el : model.elements)
    g.push_back(ElementGeometry::from_coords(
        model.nodes[el.node_a][0], model.nodes[el.node_a][1],
        model.nodes[el.node_b][0], model.nodes[el.node_b][1]));
  return g;
}

std::vector<double> reference_loads(const Model& model, const DofMap& dofs) {
  std::vector<double> f(dofs.slot_count(), 0.0);
  for (const NodalLoad& l : model.loads) f[dofs.node_slot(l.node, l.dof)] += l.value;
  return f;
}

void apply_prescribed(const Model& model, const DofMap& dofs,
                      std::vector<double>& state, int step_index) {
  for (int s = 0; s < dofs.slot_count(); ++s) {
    if (dofs.status(s) == DofMap::kFixed) {
      state[s] = 0.0;
    } else if (dofs.status(s) == DofMap::kPrescribed) {
      const Constraint& c = model.constraints[dofs.constraint_index(s)];
      if (step_index >= static_cast<int>(c.history.size()))
        throw ValidationError("prescribed history shorter than the schedule");
      state[s] = c.history[step_index];
    } else if (dofs.status(s) == DofMap::kUnused) {
      state[s] = 0.0;
    }
  }
}

double scaled_residual_norm(const DofMap& dofs, const std::vector<double>& residual,
                            const ScaleFactors& sf) {
  double sum = 0.0;
  for (int s = 0; s < dofs.slot_count(); ++s) {
    if (dofs.status(s) != DofMap::kFree) continue;
    const double r = residual[s] * (dofs.is_moment_slot(s) ? sf.moment : sf.force);
    sum += r * r;
  }
  return std::sqrt(sum);
}

// Newton iteration shared by the regular steps and the perturbed-restart
// auxiliary solve. `extra` is an additional load vector per slot.
StepResult newton_solve(const Model& model, const DofMap& dofs,
                        std::vector<double>& state, std::vector<EndForces>& warm,
                        double lambda, int step_index,
                        const std::vector<double>& extra, const SolverConfig& cfg,
                        bool want_eigen, bool want_shapes) {
  const ScaleFactors sf = residual_scaling(model);
  const std::vector<double> f_ref = reference_loads(model, dofs);
  const int n_slots = dofs.slot_count();

  apply_prescribed(model, dofs, state, step_index);

  auto external_at = [&](int slot) {
    return lambda * f_ref[slot] + (extra.empty() ? 0.0 : extra[slot]);
  };

  StepResult result;
  result.step = step_index;
  result.lambda = lambda;

  AssembleResult asm_res = assemble(model, dofs, state, warm, cfg.shooting);

  std::vector<double> residual(n_slots, 0.0);
  auto refresh_residual = [&]() {
    for (int s = 0; s < n_slots; ++s) residual[s] = external_at(s) - asm_res.internal[s];
  };
  refresh_residual();
  double norm = scaled_residual_norm(dofs, residual, sf);
  result.residual_history.push_back(norm);

  while (norm > cfg.tol && dofs.free_count() > 0) {
    if (result.iterations >= cfg.max_iter)
      throw NonConvergenceError("global Newton iteration did not converge",
                                result.iterations, norm);
    if (!std::isfinite(norm))
      throw NonConvergenceError("global residual is not finite", result.iterations,
                                norm);

    std::vector<double> rhs(dofs.free_count(), 0.0);
    for (int s = 0; s < n_slots; ++s)
      if (dofs.status(s) == DofMap::kFree) rhs[dofs.equation(s)] = residual[s];

    const std::vector<double> delta = ldlt_solve(asm_res.tangent, rhs);
    for (int s = 0; s < n_slots; ++s)
      if (dofs.status(s) == DofMap::kFree) state[s] += delta[dofs.equation(s)];
    ++result.iterations;

    asm_res = assemble(model, dofs, state, warm, cfg.shooting);
    refresh_residual();
    norm = scaled_residual_norm(dofs, residual, sf);
    result.residual_history.push_back(norm);
  }

  result.converged = true;
  result.dof_values = state;
  result.reactions.assign(n_slots, 0.0);
  for (int s = 0; s < n_slots; ++s)
    if (dofs.status(s) == DofMap::kFixed || dofs.status(s) == DofMap::kPrescribed)
      result.reactions[s] = asm_res.internal[s] - external_at(s);

  if (want_eigen && dofs.free_count() > 0)
    result.min_eigenvalue = min_eigenvalue_of(asm_res.tangent);

  if (want_shapes) {
    const std::vector<ElementGeometry> geoms = element_geometries(model);
    result.shapes.reserve(model.elements.size());
    for (int e = 0; e < static_cast<int>(model.elements.size()); ++e) {
      const auto& slots_a = dofs.end_slots(e, ElementEnd::a);
      const GlobalNodeState a{state[slots_a[0]], state[slots_a[1]], state[slots_a[2]]};
      const ElementGeometry& geom = geoms[e];
      const double cp = std::cos(a.phi), sp = std::sin(a.phi);
      const double c = geom.cos0 * cp + geom.sin0 * sp;
      const double s = geom.sin0 * cp - geom.cos0 * sp;
      const double x0 = model.nodes[model.elements[e].node_a][0] + a.u;
      const double z0 = model.nodes[model.elements[e].node_a][1] + a.w;
      const IntegrationGrid& g = asm_res.grids[e];
      ElementShape shape;
      shape.element = e;
      shape.x = g.x;
      shape.phi = g.phi;
      shape.moment = g.moment;
      shape.normal_mid = g.normal_mid;
      shape.X.resize(g.x.size());
      shape.Z.resize(g.x.size());
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double xi = g.x[i] + g.u[i];
        const double zi = g.w[i];
        shape.X[i] = x0 + c * xi - s * zi;
        shape.Z[i] = z0 + s * xi + c * zi;
      }
      result.shapes.push_back(std::move(shape));
    }
  }
  return result;
}

}  // namespace

Schedule Schedule::proportional(int steps, double final_factor) {
  Schedule s;
  s.load_factors.resize(steps);
  for (int j = 0; j < steps; ++j)
    s.load_factors[j] = final_factor * (j + 1) / static_cast<double>(steps);
  return s;
}

AssembleResult assemble(const Model& model, const DofMap& dofs,
                        const std::vector<double>& state,
                        std::vector<EndForces>& warm, const ShootingConfig& shooting) {
  const int n_elems = static_cast<int>(model.elements.size());
  if (static_cast<int>(warm.size()) != n_elems)
    warm.assign(n_elems, EndForces{});

  const std::vector<ElementGeometry> geoms = element_geometries(model);

  AssembleResult out;
  out.internal.assign(dofs.slot_count(), 0.0);
  out.tangent = DenseMatrix(dofs.free_count(), dofs.free_count());
  out.forces.resize(n_elems);
  out.locals.resize(n_elems);
  out.grids.resize(n_elems);

  for (int e = 0; e < n_elems; ++e) {
    const ElementDef& el = model.elements[e];
    const auto& sa = dofs.end_slots(e, ElementEnd::a);
    const auto& sb = dofs.end_slots(e, ElementEnd::b);
    const GlobalNodeState a{state[sa[0]], state[sa[1]], state[sa[2]]};
    const GlobalNodeState b{state[sb[0]], state[sb[1]], state[sb[2]]};
    const ElementGeometry& geom = geoms[e];

    const LocalEndDisplacements target = local_target(a, b, geom);

    ShootingConfig sc = shooting;
    sc.segments = el.segments;

    // Newton from the warm-started forces; if that fails, retry from the
    // linear-theory estimate, then from its bending-only variant (the full
    // estimate misreads geometric end shortening as axial strain when EA is
    // large).
    const EndForces starts[3] = {
        warm[e], initial_guess(target, el.section, geom.length),
        initial_guess({0.0, target.w, target.phi}, el.section, geom.length)};
    ShootingResult shot;
    bool solved = false;
    std::string last_error;
    for (const EndForces& start : starts) {
      try {
        shot = solve_end_forces(target, start, sc, el.section, geom.length);
        solved = true;
        break;
      } catch (const Error& err) {
        last_error = err.what();
      }
    }
    if (!solved) throw ElementSolveError(e, last_error);
    warm[e] = shot.forces;

    Mat3 g_inv;
    try {
      g_inv = inverse3(jacobian_from_grid(shot.forces, el.section, shot.grid));
    } catch (const SingularMatrixError&) {
      throw ElementSolveError(e, "singular shooting Jacobian at the converged state");
    }

    const GlobalEndForces gf = global_forces(shot.forces, target, a.phi, geom);
    const Mat6 k = tangent_stiffness(shot.forces, g_inv, a, b, geom, gf);

    const int slots[6] = {sa[0], sa[1], sa[2], sb[0], sb[1], sb[2]};
    const double fvals[6] = {gf.Xa, gf.Za, gf.Ma, gf.Xb, gf.Zb, gf.Mb};
    for (int i = 0; i < 6; ++i) out.internal[slots[i]] += fvals[i];
    for (int i = 0; i < 6; ++i) {
      if (dofs.status(slots[i]) != DofMap::kFree) continue;
      const int row = dofs.equation(slots[i]);
      for (int j = 0; j < 6; ++j) {
        if (dofs.status(slots[j]) != DofMap::kFree) continue;
        out.tangent(row, dofs.equation(slots[j])) += k[i][j];
      }
    }

    out.forces[e] = shot.forces;
    out.locals[e] = target;
    out.grids[e] = std::move(shot.grid);
  }
  return out;
}

StepResult solve_step(const Model& model, const DofMap& dofs,
                      std::vector<double>& state, std::vector<EndForces>& warm,
                      double lambda, int step_index, const SolverConfig& cfg) {
  return newton_solve(model, dofs, state, warm, lambda, step_index, {}, cfg,
                      cfg.eigen_check, cfg.record_shapes);
}

double min_eigenvalue_of(const DenseMatrix& tangent) { return min_eigenvalue(tangent); }

void perturbed_restart(const Model& model, const DofMap& dofs,
                       std::vector<double>& state, std::vector<EndForces>& warm,
                       double lambda, int step_index, const SolverConfig& cfg) {
  if (cfg.perturbation.moment == 0.0) return;
  if (cfg.perturbation.node < 0 ||
      cfg.perturbation.node >= static_cast<int>(model.nodes.size()))
    throw ValidationError("perturbation: node index out of range");

  std::vector<double> extra(dofs.slot_count(), 0.0);
  const int slot = dofs.node_slot(cfg.perturbation.node, Dof::phi);
  if (dofs.status(slot) == DofMap::kUnused)
    throw ValidationError("perturbation: node rotation has no rigid attachment");
  extra[slot] = cfg.perturbation.moment;

  newton_solve(model, dofs, state, warm, lambda, step_index, extra, cfg, false, false);
}

AnalysisResult run_analysis(const Model& model, const Schedule& schedule,
                            const SolverConfig& cfg) {
  const DofMap dofs = DofMap::build(model);

  AnalysisResult result;
  std::vector<double> state(dofs.slot_count(), 0.0);
  std::vector<EndForces> warm(model.elements.size());

  if (cfg.check_initial_stability && dofs.free_count() > 0) {
    std::vector<EndForces> probe(model.elements.size());
    std::vector<double> zero(dofs.slot_count(), 0.0);
    const AssembleResult initial = assemble(model, dofs, zero, probe, cfg.shooting);
    if (!is_positive_definite(initial.tangent))
      throw ValidationError(
          "model is not stably supported: initial tangent stiffness is not "
          "positive definite");
  }

  for (int j = 0; j < schedule.n_steps(); ++j) {
    const double lambda = schedule.load_factors[j];
    try {
      if (cfg.perturbation.moment != 0.0) {
        const double prev = j > 0 ? schedule.load_factors[j - 1] : 0.0;
        const int prev_step = j > 0 ? j - 1 : 0;
        perturbed_restart(model, dofs, state, warm, prev, prev_step, cfg);
      }
      StepResult step = solve_step(model, dofs, state, warm, lambda, j, cfg);
      step.step = j;
      result.steps.push_back(std::move(step));
    } catch (const Error& err) {
      result.failure = "step " + std::to_string(j) + " (load factor " +
                       std::to_string(lambda) + "): " + err.what();
      return result;
    }
  }
  result.completed = true;
  return result;
}

}  // namespace pframe
