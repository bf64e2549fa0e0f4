#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pframe/errors.hpp"
#include "pframe/model_io.hpp"
#include "pframe/solver.hpp"

namespace {

using pframe::AnalysisResult;
using pframe::ModelFile;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNonConvergence = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pframe::ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw pframe::Error("cannot write " + path);
  out << text;
}

// Runs one model and emits CSV results; returns the analysis outcome.
AnalysisResult run_model(const ModelFile& mf, const std::string& out_dir) {
  pframe::SolverConfig cfg = mf.solver;
  cfg.record_shapes = true;
  const pframe::DofMap dofs = pframe::DofMap::build(mf.model);
  const AnalysisResult result = pframe::run_analysis(mf.model, mf.schedule(), cfg);

  emit_results(result, mf.model, dofs, pframe::ResultFormat::csv_history, out_dir);
  emit_results(result, mf.model, dofs, pframe::ResultFormat::csv_shapes, out_dir);
  if (cfg.eigen_check)
    emit_results(result, mf.model, dofs, pframe::ResultFormat::csv_eigen, out_dir);

  if (result.completed) {
    std::cout << "converged: " << result.steps.size() << " steps -> " << out_dir
              << std::endl;
  } else {
    std::cout << "FAILED: " << result.failure << " (" << result.steps.size()
              << " steps written)" << std::endl;
  }
  return result;
}

// Applies "path=value" to a JSON document. The path uses dots and supports a
// '*' wildcard over array elements, e.g. elements.*.N or elements.0.EA.
void apply_param(nlohmann::json& node, const std::vector<std::string>& tokens,
                 std::size_t level, double value) {
  const std::string& tok = tokens[level];
  const bool last = level + 1 == tokens.size();

  auto descend = [&](nlohmann::json& child) {
    if (last)
      child = value;
    else
      apply_param(child, tokens, level + 1, value);
  };

  if (tok == "*") {
    if (!node.is_array())
      throw pframe::ValidationError("sweep: '*' applied to a non-array");
    for (auto& child : node) descend(child);
  } else if (node.is_array()) {
    const std::size_t idx = std::stoul(tok);
    if (idx >= node.size()) throw pframe::ValidationError("sweep: index out of range");
    descend(node[idx]);
  } else if (node.is_object()) {
    if (!node.contains(tok))
      throw pframe::ValidationError("sweep: no key '" + tok + "'");
    descend(node[tok]);
  } else {
    throw pframe::ValidationError("sweep: cannot descend into a scalar");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar geometrically nonlinear frame solver"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  std::string run_model_path;
  std::string run_out = "out";
  CLI::App* run = app.add_subcommand("run", "run a model file");
  run->add_option("model", run_model_path, "model JSON file")->required();
  run->add_option("--out", run_out, "output directory");

  // --- generate ----------------------------------------------------------
  std::string gen_name;
  std::string gen_out = "model.json";
  double gL = 1.0, gEI = 1.0, gEA = 1e4, gpsi = 0.02985, ga = 1.0, gt = 1.0;
  double gpmax = 4.0, gwmax = 0.0, gepsmax = 0.3, gperturb = 0.0;
  int gN = 100, gsteps = 6, gcells = 1;
  std::string gmode = "tension";
  bool gboundary = false;
  CLI::App* gen = app.add_subcommand("generate", "generate a benchmark model");
  gen->add_option("benchmark", gen_name,
                  "one of: cantilever-moment, williams-toggle, square-frame, "
                  "diamond-frame, buckling-cantilever, honeycomb, periodic-cell")
      ->required();
  gen->add_option("-o,--out", gen_out, "output model file");
  gen->add_option("--L", gL, "member length");
  gen->add_option("--EI", gEI, "flexural stiffness");
  gen->add_option("--EA", gEA, "axial stiffness");
  gen->add_option("--segments", gN, "integration segments per element");
  gen->add_option("--steps", gsteps, "number of incremental steps");
  gen->add_option("--psi", gpsi, "toggle inclination (rad)");
  gen->add_option("--p-max", gpmax, "final load value");
  gen->add_option("--w-max", gwmax, "final prescribed displacement");
  gen->add_option("--eps-max", gepsmax, "final average strain (lattices)");
  gen->add_option("--perturbation", gperturb, "restart moment (buckling)");
  gen->add_option("--cells", gcells, "cells per side (honeycomb)");
  gen->add_option("--a", ga, "strut length (lattices)");
  gen->add_option("--t", gt, "out-of-plane thickness (lattices)");
  gen->add_option("--mode", gmode, "tension or compression (lattices)");
  gen->add_flag("--boundary-layer", gboundary, "extra bottom layer of vertical struts");

  // --- sweep ---------------------------------------------------------------
  std::string sweep_model_path, sweep_param, sweep_out = "sweep";
  CLI::App* sweep = app.add_subcommand("sweep", "run a model over a parameter list");
  sweep->add_option("model", sweep_model_path, "model JSON file")->required();
  sweep->add_option("--param", sweep_param, "path=v1,v2,... (e.g. elements.*.N=10,20)")
      ->required();
  sweep->add_option("--out", sweep_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const ModelFile mf = pframe::parse_model(read_file(run_model_path));
      const AnalysisResult result = run_model(mf, run_out);
      return result.completed ? kExitOk : kExitNonConvergence;
    }

    if (*gen) {
      ModelFile mf;
      const pframe::LatticeMode mode = gmode == "compression"
                                           ? pframe::LatticeMode::compression
                                           : pframe::LatticeMode::tension;
      if (gen_name == "cantilever-moment") {
        mf = pframe::gen_cantilever_moment(gL, gEI, gEA, gN, gsteps);
      } else if (gen_name == "williams-toggle") {
        const double wmax = gwmax != 0.0 ? gwmax : 0.75;
        mf = pframe::gen_williams_toggle(gpsi, gL != 1.0 ? gL : 12.94,
                                         gEA != 1e4 ? gEA : 1.885e6,
                                         gEI != 1.0 ? gEI : 9.27e3, gN, gsteps, wmax);
      } else if (gen_name == "square-frame") {
        mf = pframe::gen_square_frame(gEA, gN, gsteps, gpmax);
      } else if (gen_name == "diamond-frame") {
        mf = pframe::gen_diamond_frame(gEA, gN, gsteps, gpmax);
      } else if (gen_name == "buckling-cantilever") {
        mf = pframe::gen_buckling_cantilever(gEA, gN, gsteps, gpmax, gperturb);
      } else if (gen_name == "honeycomb") {
        pframe::HoneycombSpec spec;
        spec.n = gcells;
        spec.a = ga;
        spec.EA = gEA;
        spec.EI = gEI;
        spec.t = gt;
        spec.mode = mode;
        spec.add_boundary_layer = gboundary;
        spec.segments = gN;
        mf = pframe::gen_honeycomb(spec, gepsmax, gsteps);
      } else if (gen_name == "periodic-cell") {
        mf = pframe::gen_periodic_cell(ga, gEA, gEI, mode, gN, gsteps, gepsmax);
      } else {
        std::cerr << "unknown benchmark '" << gen_name << "'" << std::endl;
        return kExitInput;
      }
      write_file(gen_out, pframe::to_json(mf));
      std::cout << "wrote " << gen_out << std::endl;
      return kExitOk;
    }

    if (*sweep) {
      const auto eq = sweep_param.find('=');
      if (eq == std::string::npos) {
        std::cerr << "--param must look like path=v1,v2,..." << std::endl;
        return kExitInput;
      }
      const std::vector<std::string> tokens = split(sweep_param.substr(0, eq), '.');
      const std::vector<std::string> values = split(sweep_param.substr(eq + 1), ',');
      if (tokens.empty() || values.empty()) {
        std::cerr << "--param must name a path and at least one value" << std::endl;
        return kExitInput;
      }

      const std::string base_text = read_file(sweep_model_path);
      bool all_ok = true;
      for (const std::string& v : values) {
        nlohmann::json doc = nlohmann::json::parse(base_text);
        apply_param(doc, tokens, 0, std::stod(v));
        const ModelFile mf = pframe::parse_model(doc.dump());
        const std::string dir =
            sweep_out + "/" + sweep_param.substr(0, eq) + "=" + v;
        std::cout << "[" << sweep_param.substr(0, eq) << "=" << v << "] ";
        const AnalysisResult result = run_model(mf, dir);
        all_ok = all_ok && result.completed;
      }
      return all_ok ? kExitOk : kExitNonConvergence;
    }
  } catch (const pframe::ValidationError& err) {
    std::cerr << "input error: " << err.what() << std::endl;
    return kExitInput;
  } catch (const pframe::NonConvergenceError& err) {
    std::cerr << "did not converge: " << err.what() << std::endl;
    return kExitNonConvergence;
  } catch (const pframe::Error& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitNonConvergence;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitInput;
  }
  return kExitOk;
}
