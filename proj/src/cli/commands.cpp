// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvcluster/cli/commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvcluster/cli/export.hpp"

namespace cvc::cli {

using nlohmann::json;

namespace {

json weights_json(const EdgeWeights& w) {
  return {{"a", round_sig(w.a)}, {"b", round_sig(w.b)}, {"c", round_sig(w.c)}, {"d", round_sig(w.d)},
          {"r", round_sig(w.r)}};
}

std::string dot_title(const json& meta) {
  std::ostringstream title;
  title << "p1=" << meta["p1"].get<int>() << " p2=" << meta["p2"].get<int>();
  if (meta.contains("theta1")) {
    title << " theta1=" << format_number(meta["theta1"].get<double>())
          << " theta2=" << format_number(meta["theta2"].get<double>());
  } else {
    title << " time-varying pump";
  }
  return title.str();
}

std::string render_graph(const ClusterGraph& graph, const json& meta, const std::string& format,
                         bool with_macronodes) {
  if (format == "dot") return graph_to_dot(graph, dot_title(meta), with_macronodes);
  return graph_to_json(graph, meta, with_macronodes).dump(2) + "\n";
}

}  // namespace

std::string render_ppt_scan(const ExperimentConfig& config) {
  return ppt_table_csv(ppt_scan(config.theta_grid, *config.gamma, config.threads));
}

std::string render_supermodes(const ExperimentConfig& config) {
  const double theta = *config.theta;
  const HamiltonianGraph graph = quadripartite_graph(theta);
  const CovarianceState state = evolve_vacuum(graph, *config.gamma);
  const Eigen::Matrix<double, 8, 4> closed = quadripartite_squeezed_combinations(theta);

  std::string out = "index,type,eigenvalue,variance,squeezed,closed_form_residual,Q1,Q2,Q3,Q4,P1,P2,P3,P4\n";
  const std::vector<Supermode> modes = supermodes(graph);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Supermode& mode = modes[i];
    const double variance = quadrature_variance(state.covariance, mode.coefficients);
    // Squeezed modes must lie in the closed-form span, the others orthogonal to it.
    const double residual = mode.squeezed() ? subspace_residual(closed, mode.coefficients)
                                            : (closed.transpose() * mode.coefficients).norm();
    out += std::to_string(i) + "," + (mode.is_q_type() ? "Q" : "P") + "," + format_number(mode.eigenvalue) + "," +
           format_number(variance) + "," + (mode.squeezed() ? "1" : "0") + "," + format_number(residual);
    for (Index j = 0; j < mode.coefficients.size(); ++j) out += "," + format_number(mode.coefficients[j]);
    out += "\n";
  }
  return out;
}

std::string render_dual_rail(const ExperimentConfig& config) {
  const PumpSpec pump = config.pump();
  const NullifierSet set = dual_rail_nullifiers(pump, config.window);
  const ClusterGraph graph = graph_from_nullifiers(set.forms);
  json meta = {{"p1", *config.p1},
               {"p2", *config.p2},
               {"theta1", round_sig(*config.theta1)},
               {"theta2", round_sig(*config.theta2)},
               {"weights", weights_json(edge_weights(*config.theta1, *config.theta2))},
               {"window", {config.window.n_min, config.window.n_max}},
               {"components", connected_components(graph).size()},
               {"warnings", set.warnings}};
  return render_graph(graph, meta, config.format, false);
}

json lattice_meta(const PumpSpec& pump, FreqWindow window, BinRange bins, const ClusterGraph& graph) {
  const std::vector<ModeId> bulk = bulk_nodes(pump, window, bins);
  json meta = {{"p1", pump.components[0].p}, {"p2", pump.components[1].p}};
  if (is_constant_schedule(pump, bins)) {
    const EdgeWeights w = edge_weights_at(pump, bins.k_min);
    meta["theta1"] = round_sig(w.theta1);
    meta["theta2"] = round_sig(w.theta2);
    meta["weights"] = weights_json(w);
  } else {
    json per_bin = {{"bins", json::array()}, {"theta1", json::array()}, {"theta2", json::array()},
                    {"a", json::array()},    {"b", json::array()},      {"c", json::array()},
                    {"d", json::array()},    {"r", json::array()}};
    for (int k = bins.k_min; k <= bins.k_max; ++k) {
      const EdgeWeights w = edge_weights_at(pump, k);
      per_bin["bins"].push_back(k);
      per_bin["theta1"].push_back(round_sig(w.theta1));
      per_bin["theta2"].push_back(round_sig(w.theta2));
      per_bin["a"].push_back(round_sig(w.a));
      per_bin["b"].push_back(round_sig(w.b));
      per_bin["c"].push_back(round_sig(w.c));
      per_bin["d"].push_back(round_sig(w.d));
      per_bin["r"].push_back(round_sig(w.r));
    }
    meta["per_bin_weights"] = per_bin;
  }
  meta["window"] = {window.n_min, window.n_max};
  meta["bins"] = {bins.k_min, bins.k_max};
  meta["bulk_nodes"] = bulk.size();
  meta["bulk_components"] = connected_components(graph, bulk).size();
  return meta;
}

std::string render_lattice(const ExperimentConfig& config) {
  const PumpSpec pump = config.pump();
  const ClusterGraph graph = lattice_2d(pump, config.window, config.bins);
  return render_graph(graph, lattice_meta(pump, config.window, config.bins, graph), config.format, true);
}

std::string render_time_varying(const ExperimentConfig& config) {
  const PumpSpec pump = config.pump();
  const ClusterGraph graph = time_varying_lattice(pump, config.window, config.bins);
  return render_graph(graph, lattice_meta(pump, config.window, config.bins, graph), config.format, true);
}

std::string render_overlap(const ExperimentConfig& config) {
  std::string out = "pump,signal,idler,overlap,allowed\n";
  for (const HGIndex& pump : hg_family(2)) {
    for (const HGIndex& signal : hg_family(1)) {
      for (const HGIndex& idler : hg_family(1)) {
        const double value = overlap_integral(pump, signal, idler, config.resolution);
        out += to_string(pump) + "," + to_string(signal) + "," + to_string(idler) + "," + format_number(value) + "," +
               (selection_forbidden(pump, signal, idler) ? "0" : "1") + "\n";
      }
    }
  }
  return out;
}

std::string render(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::ppt_scan: return render_ppt_scan(config);
    case Command::supermodes: return render_supermodes(config);
    case Command::dual_rail: return render_dual_rail(config);
    case Command::lattice: return render_lattice(config);
    case Command::time_varying: return render_time_varying(config);
    case Command::overlap: return render_overlap(config);
  }
  return {};
}

namespace {

json read_config_file(const std::string& path) {
  if (path.empty()) return nullptr;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured-pump OPO cluster-state simulator"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  const std::vector<std::pair<Command, std::string>> verbs = {
      {Command::ppt_scan, "PPT values of the quadripartite state over a theta grid (CSV)"},
      {Command::supermodes, "Supermodes, eigenvalues and variances of the quadripartite state (CSV)"},
      {Command::dual_rail, "Dual-rail wire graph of a dual-frequency pump (JSON or DOT)"},
      {Command::lattice, "2D macronode lattice from time staggering (JSON or DOT)"},
      {Command::time_varying, "2D lattice for a per-bin pump schedule (JSON or DOT)"},
      {Command::overlap, "Overlap integrals of the order-2 pump family (CSV)"},
  };
  std::map<CLI::App*, Command> lookup;
  for (const auto& [command, help] : verbs) {
    CLI::App* sub = app.add_subcommand(command_name(command), help);
    lookup[sub] = command;
    sub->add_option("--config", config_path, "JSON experiment configuration");
    sub->add_option("--gamma", ov.gamma, "Interaction strength gamma");
    sub->add_option("--theta1", ov.theta1, "Angle of pump component 1 (radians or e.g. 0.125pi)");
    sub->add_option("--theta2", ov.theta2, "Angle of pump component 2");
    sub->add_option("--theta", ov.theta, "Pump angle of the quadripartite state");
    sub->add_option("--p1", ov.p1, "Comb index of pump component 1");
    sub->add_option("--p2", ov.p2, "Comb index of pump component 2");
    sub->add_option("--window", ov.window, "Frequency window a:b");
    sub->add_option("--bins", ov.bins, "Time-bin range a:b");
    sub->add_option("--points", ov.points, "Number of theta grid points over [0, pi/4]");
    sub->add_option("--resolution", ov.resolution, "Overlap quadrature points per axis");
    sub->add_option("--threads", ov.threads, "Worker threads for parameter scans");
    sub->add_option("--out", ov.out, "Output path (stdout when omitted)");
    sub->add_option("--format", ov.format, "json|dot|csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Command command = Command::ppt_scan;
  for (const auto& [sub, c] : lookup) {
    if (sub->parsed()) command = c;
  }

  try {
    const ExperimentConfig config = make_config(command, read_config_file(config_path), ov);
    const std::string document = render(config);
    if (config.out.empty()) {
      out << document;
    } else {
      write_atomic(config.out, document);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedConfiguration& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InconsistentInput& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const MalformedNullifier& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InconsistentGraph& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cvc::cli
