#pragma once

#include <string>
#include <vector>

#include "pframe/model.hpp"
#include "pframe/solver.hpp"

namespace pframe {

enum class ControlMode { load, displacement };

/// Parsed model file: the structural model plus the solver block.
struct ModelFile {
  Model model;
  SolverConfig solver;
  int steps = 1;
  ControlMode control = ControlMode::load;

  Schedule schedule() const { return Schedule::proportional(steps); }
};

/// Parses and validates a JSON model document. Unknown keys are rejected;
/// errors carry the JSON path of the offending entry.
ModelFile parse_model(const std::string& text);

/// Serializes a ModelFile back to its JSON document.
std::string to_json(const ModelFile& mf);

// ---------------------------------------------------------------------------
// Benchmark generators
// ---------------------------------------------------------------------------

/// Cantilever rolled into a circle by an end moment: one element, far end
/// fixed at the origin, moment history reaching 2*pi*EI/L.
ModelFile gen_cantilever_moment(double L, double EI, double EA, int segments,
                                int steps);

/// Shallow two-bar toggle reduced to a single member, clamped at one end and
/// vertically sliding at the other, driven by a prescribed vertical
/// displacement history.
ModelFile gen_williams_toggle(double psi, double L, double EA, double EI,
                              int segments, int steps, double w_max);

/// Quarter model of a square frame compressed at opposite side midpoints:
/// two elements, five free DOFs, force P at the loaded midpoint.
ModelFile gen_square_frame(double EA, int segments, int steps, double p_max);

/// Quarter model of a diamond frame with a hinge at the loaded vertex:
/// one element, three free DOFs.
ModelFile gen_diamond_frame(double EA, int segments, int steps, double p_max);

/// Axially compressed cantilever for stability sweeps: one element, far end
/// fixed, axial force at the free node, eigenvalue monitoring on.
ModelFile gen_buckling_cantilever(double EA, int segments, int steps, double p_max,
                                  double perturbation_moment);

struct FrameFixtures {
  ModelFile square_quarter;
  ModelFile diamond_quarter;
  ModelFile buckling_cantilever;
};

/// Dimensionless frame fixtures (L = EI = 1) with parameterizable EA.
FrameFixtures gen_frames(double EA = 100.0);

enum class LatticeMode { tension, compression };

struct HoneycombSpec {
  int n = 1;             ///< cells per side (odd)
  double a = 1.0;        ///< strut length
  double EA = 1e4;
  double EI = 1.0;
  double t = 1.0;        ///< out-of-plane thickness
  LatticeMode mode = LatticeMode::tension;
  bool add_boundary_layer = false;  ///< extra layer of vertical struts at the bottom
  int segments = 10;     ///< integration segments per strut
};

/// n x n honeycomb lattice loaded by prescribed vertical displacements at the
/// n bottom nodes; the n top nodes are held vertically and one node is fixed
/// horizontally.
ModelFile gen_honeycomb(const HoneycombSpec& spec, double eps_max, int steps);

/// Closed-form node/element counts implied by the stacking rule.
int honeycomb_node_count(int n);
int honeycomb_element_count(int n);

/// Single inclined member of a periodic hexagonal cell, clamped at one end,
/// guided (vertical displacement, free horizontal, zero rotation) at the
/// other.
ModelFile gen_periodic_cell(double a, double EA, double EI, LatticeMode mode,
                            int segments, int steps, double eps_max);

struct LatticeResult {
  std::vector<double> sigma;          ///< average stress per step
  std::vector<double> eps;            ///< average strain per step
  std::vector<double> eps_corrected;  ///< strain with the missing-layer correction
};

/// Average stress/strain of a finite lattice run, plus the corrected strain
/// accounting for the absent extra layer of vertical struts.
LatticeResult honeycomb_postprocess(const AnalysisResult& result, const Model& model,
                                    const DofMap& dofs, const HoneycombSpec& spec);

/// Macroscopic stress/strain of a periodic-cell run: the prescribed member
/// displacement plus the closed-form axial contribution of the vertical
/// strut, normalized by the cell dimensions.
LatticeResult periodic_cell_postprocess(const AnalysisResult& result,
                                        const Model& model, const DofMap& dofs,
                                        double a, double EA, double t,
                                        LatticeMode mode);

struct StressStrainPoint {
  double eps = 0.0;
  double sigma = 0.0;
  double phi_a = 0.0;
};

/// Parametric stress-strain curve of the periodic cell from the closed-form
/// cantilever solution, sampled over free-end rotations.
std::vector<StressStrainPoint> periodic_cell_analytic_curve(
    double a, double EI, double t, LatticeMode mode,
    const std::vector<double>& phi_values);

enum class ResultFormat { csv_history, csv_shapes, csv_eigen };

/// Writes one CSV result file into `directory`; returns the file path.
/// Formatting is fixed (17 significant digits, LF endings) so identical
/// inputs produce byte-identical files.
std::string emit_results(const AnalysisResult& result, const Model& model,
                         const DofMap& dofs, ResultFormat format,
                         const std::string& directory);

}  // namespace pframe
