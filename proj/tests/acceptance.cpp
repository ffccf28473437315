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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <functional>
#include <sstream>

#include "cvcluster/cli/commands.hpp"
#include "cvcluster/entanglement.hpp"
#include "oracles.hpp"

using namespace cvc;
using oracle::kPi;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) note << what;
    ok = ok && condition;
  }
};

// ---------------------------------------------------------------------------

Check fig1_ppt() {
  Check c;
  const double gamma = 0.1;
  const PptTable mid = ppt_scan({kPi / 16, kPi / 8, 3 * kPi / 16}, gamma);
  c.expect((mid.values.array() < 1.0 - 1e-6).all(), "some PPT value >= 1 - 1e-6 inside (0, π/4)");

  const PptTable ends = ppt_scan({0.0, kPi / 4}, gamma);
  auto only_unit = [&](Index row, const std::string& label) {
    for (Index j = 0; j < 7; ++j) {
      const bool unit = std::abs(ends.values(row, j) - 1.0) <= 1e-9;
      if (unit != (ends.bipartitions[j].label == label)) return false;
    }
    return true;
  };
  c.expect(only_unit(0, "13|24"), "θ=0: 13|24 is not the unique unit value");
  c.expect(only_unit(1, "14|23"), "θ=π/4: 14|23 is not the unique unit value");

  const std::vector<double> grid = default_theta_grid();
  const PptTable all = ppt_scan(grid, gamma, 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> a(7), b(7);
    for (Index j = 0; j < 7; ++j) {
      a[j] = all.values(static_cast<Index>(i), j);
      b[j] = all.values(static_cast<Index>(grid.size() - 1 - i), j);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int j = 0; j < 7; ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  }
  c.expect(worst <= 1e-9, "multiset symmetry θ <-> π/4-θ violated");
  c.note << (c.ok ? "" : "; ") << "symmetry residual " << worst;
  return c;
}

Check squeezing_law() {
  Check c;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = angle(rng);
    const HamiltonianGraph g = quadripartite_graph(theta);
    for (double gamma : {0.05, 0.1, 0.3}) {
      const MatrixXd v = evolve_vacuum(g, gamma).covariance;
      const MatrixXd s = oracle::taylor_expm(phase_space_generator(g.adjacency), gamma);
      const MatrixXd v_series = s * s.transpose();
      const double expected = std::exp(-std::sqrt(2.0) * gamma);
      for (const Supermode& m : supermodes(g)) {
        if (!m.squeezed()) continue;
        worst = std::max(worst, std::abs(quadrature_variance(v, m.coefficients) - expected));
        worst = std::max(worst, std::abs(quadrature_variance(v_series, m.coefficients) - expected));
      }
    }
  }
  c.expect(worst <= 1e-9, "squeezed variance differs from exp(-√2γ)");
  c.note << (c.ok ? "" : "; ") << "max deviation " << worst;
  return c;
}

Check edge_weight_normalization() {
  Check c;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const EdgeWeights w = edge_weights(angle(rng), angle(rng));
    worst = std::max(worst, std::abs(w.a * w.a + w.b * w.b + w.c * w.c + w.d * w.d - 1.0));
  }
  c.expect(worst <= 1e-12, "a²+b²+c²+d² != 1");
  const double s = 1.0 / std::sqrt(2.0);
  const EdgeWeights top = edge_weights(kPi / 4, kPi / 4);
  c.expect(std::abs(top.r - 1.0) <= 1e-12 && std::abs(top.b - s) <= 1e-12 && std::abs(top.d - s) <= 1e-12,
           "endpoint (π/4, π/4) values");
  const EdgeWeights zero = edge_weights(0.0, 0.0);
  c.expect(std::abs(zero.r - s) <= 1e-12 && std::abs(zero.a - s) <= 1e-12 && std::abs(zero.c - s) <= 1e-12,
           "endpoint (0, 0) values");
  c.note << (c.ok ? "" : "; ") << "max normalization residual " << worst;
  return c;
}

Check pipeline_equivalence() {
  Check c;
  const FreqWindow window{-2, 4};
  const BinRange bins{0, 5};
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::vector<std::pair<double, double>> cases{{0, 0}, {0, kPi / 4}, {kPi / 4, 0}, {kPi / 4, kPi / 4}};
  for (int i = 0; i < 10; ++i) cases.emplace_back(angle(rng), angle(rng));
  double worst = 0.0;
  std::size_t compared = 0;
  for (const auto& [t1, t2] : cases) {
    const PumpSpec pump = oracle::dual_pump(1, 3, t1, t2);
    const NullifierSet set = macronode_nullifiers(pump, window, bins);
    const oracle::Weights w = oracle::weights(t1, t2);
    for (const QuadratureForm& form : set.forms) {
      const ModeId anchor = form.anchor()->mode;
      const int sign = anchor.spatial == Spatial::h ? +1 : -1;
      const QuadratureForm mech = oracle::mechanical_macronode(w, w, anchor.freq, 1, 3, anchor.time, sign);
      worst = std::max(worst, form.max_abs_difference(mech));
      ++compared;
    }
  }
  c.expect(compared == cases.size() * 4 * 5 * 2, "unexpected number of macronode nullifiers");
  c.expect(worst <= 1e-12, "closed form and mechanical pipeline disagree");
  c.note << (c.ok ? "" : "; ") << compared << " forms, max coefficient deviation " << worst;
  return c;
}

Check fig3_structure() {
  Check c;
  const FreqWindow window{-2, 4};
  const BinRange bins{0, 5};
  auto build = [&](double t1, double t2) {
    const PumpSpec pump = oracle::dual_pump(1, 3, t1, t2);
    return std::pair{lattice_2d(pump, window, bins), bulk_nodes(pump, window, bins)};
  };
  auto bulk_edges = [](const ClusterGraph& g, const std::vector<ModeId>& bulk) {
    std::vector<ClusterEdge> out;
    for (const ClusterEdge& e : g.edges) {
      if (std::binary_search(bulk.begin(), bulk.end(), e.u) && std::binary_search(bulk.begin(), bulk.end(), e.v)) {
        out.push_back(e);
      }
    }
    return out;
  };

  {
    const auto [g, bulk] = build(kPi / 4, kPi / 4);
    const std::size_t components = oracle::count_components(g, bulk);
    c.expect(components == 2, "(π/4, π/4) is not two components");
    c.expect(connected_components(g, bulk).size() == components, "library component count disagrees");
    c.note << "(π/4,π/4) components " << components;
  }
  for (const auto& [t1, t2, weight] : {std::tuple{0.0, kPi / 4, edge_weights(0.0, kPi / 4).a},
                                       std::tuple{kPi / 4, 0.0, edge_weights(kPi / 4, 0.0).c}}) {
    const auto [g, bulk] = build(t1, t2);
    bool crosses = false, same_ok = true;
    for (const ClusterEdge& e : bulk_edges(g, bulk)) {
      if (e.u.time != e.v.time) {
        crosses = true;
      } else if (std::abs(std::abs(e.weight) - weight) > 1e-12) {
        same_ok = false;
      }
    }
    c.expect(crosses, "mixed endpoint lattice has no inter-bin edge");
    c.expect(same_ok, "same-bin coupling not through a or c");
  }
  {
    const auto [g, bulk] = build(0.0, 0.0);
    std::size_t cross = 0;
    for (const ClusterEdge& e : g.edges) cross += e.u.time != e.v.time;
    c.expect(cross == 0, "(0, 0) has edges between bins");
    c.note << ", (0,0) inter-bin edges " << cross;
  }
  return c;
}

using Signature = std::multiset<std::tuple<int, int, int, int, int, int, double>>;

// Bulk edges starting in bin k, with times taken relative to k.
Signature bin_signature(const ClusterGraph& g, const std::vector<ModeId>& bulk, int k) {
  Signature sig;
  for (const ClusterEdge& e : g.edges) {
    if (!std::binary_search(bulk.begin(), bulk.end(), e.u) || !std::binary_search(bulk.begin(), bulk.end(), e.v)) continue;
    if (std::min(e.u.time, e.v.time) != k) continue;
    sig.insert({int(e.u.spatial), e.u.freq, e.u.time - k, int(e.v.spatial), e.v.freq, e.v.time - k,
                std::round(e.weight * 1e12) / 1e12});
  }
  return sig;
}

Check fig4_structure() {
  Check c;
  const FreqWindow window{-2, 4};
  const BinRange bins{0, 7};
  const std::array<std::pair<double, double>, 2> kagome{{{0.0, kPi / 4}, {kPi / 4, 0.0}}};
  const std::array<std::pair<double, double>, 2> other{{{0.0, kPi / 4}, {kPi / 4, kPi / 4}}};

  std::vector<std::pair<std::vector<double>, std::vector<double>>> invariants;
  for (const auto& pattern : {kagome, other}) {
    const PumpSpec pump = with_schedule(oracle::dual_pump(1, 3, 0, 0), PumpSchedule::periodic(pattern, bins));
    const ClusterGraph g = time_varying_lattice(pump, window, bins);
    const std::vector<ModeId> bulk = bulk_nodes(pump, window, bins);
    // Bulk bins 1..6; edges from k reach k+1, so k = 1..5 are fully bulk.
    bool periodic = true, uniform = true;
    for (int k = 1; k + 2 <= 5; ++k) periodic = periodic && bin_signature(g, bulk, k) == bin_signature(g, bulk, k + 2);
    for (int k = 1; k + 1 <= 5; ++k) uniform = uniform && bin_signature(g, bulk, k) == bin_signature(g, bulk, k + 1);
    c.expect(periodic, "schedule graph is not period 2 in k");
    c.expect(!uniform, "schedule graph is uniform in k");

    std::vector<double> degrees, weights;
    for (const ModeId& node : bulk) {
      std::size_t d = 0;
      for (const ClusterEdge& e : g.edges) {
        const bool inside = std::binary_search(bulk.begin(), bulk.end(), e.u) && std::binary_search(bulk.begin(), bulk.end(), e.v);
        if (inside && (e.u == node || e.v == node)) {
          ++d;
          if (e.u == node) weights.push_back(std::round(e.weight * 1e12) / 1e12);
        }
      }
      degrees.push_back(double(d));
    }
    std::sort(degrees.begin(), degrees.end());
    std::sort(weights.begin(), weights.end());
    invariants.emplace_back(degrees, weights);
  }
  // Differing degree sequences or weight multisets rule out an isomorphism.
  c.expect(invariants[0] != invariants[1], "the two schedules give indistinguishable bulk patterns");

  cli::ExperimentConfig lattice = cli::make_config(
      cli::Command::lattice,
      {{"pump", {{"p1", 1}, {"p2", 3}, {"theta1", "0.125pi"}, {"theta2", "0.0625pi"}}}, {"window", "-2:4"}, {"bins", "0:5"}},
      {});
  cli::ExperimentConfig tv = cli::make_config(
      cli::Command::time_varying,
      {{"pump", {{"p1", 1}, {"p2", 3}}}, {"window", "-2:4"}, {"bins", "0:5"}, {"schedule", nlohmann::json::array({nlohmann::json::array({"0.125pi", "0.0625pi"})})}}, {});
  bool identical = true;
  for (const std::string format : {"json", "dot"}) {
    lattice.format = tv.format = format;
    identical = identical && cli::render(lattice) == cli::render(tv);
  }
  c.expect(identical, "constant schedule output differs from the static lattice");
  return c;
}

Check gaussian_core() {
  Check c;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double defect = 0.0, purity = 0.0;
  bool involutive = true;
  for (int i = 0; i < 20; ++i) {
    const double t = angle(rng);
    for (double gamma : {0.05, 0.1, 0.3, 0.5}) {
      const HamiltonianGraph g = i % 2 ? quadripartite_graph(t) : comb_graph(oracle::dual_pump(1, 3, t, 0.7 * t), {-2, 4});
      const MatrixXd s = symplectic_from_graph(g, gamma);
      defect = std::max(defect, symplectic_defect(s));
      const MatrixXd v = covariance(s);
      purity = std::max(purity, (symplectic_eigenvalues(v).array() - 1.0).abs().maxCoeff());
      const std::array<Index, 2> side{0, 2};
      involutive = involutive && partial_transpose(partial_transpose(v, side), side) == v;
    }
  }
  c.expect(defect <= 1e-10, "symplectic defect above 1e-10");
  c.expect(purity <= 1e-9, "generated state is not pure");
  c.expect(involutive, "partial transpose is not involutive bit for bit");

  const MatrixXd vac = MatrixXd::Identity(8, 8);
  bool exact = evolve_vacuum(quadripartite_graph(0.3), 0.0).covariance == vac;
  exact = exact && symplectic_eigenvalues(vac) == VectorXd::Ones(4);
  for (const Bipartition& b : enumerate_bipartitions(4)) exact = exact && ppt_value(vac, b.left) == 1.0;
  c.expect(exact, "vacuum fixtures are not exact");
  c.note << (c.ok ? "" : "; ") << "defect " << defect << ", purity residual " << purity;
  return c;
}

Check selection_rules() {
  Check c;
  std::vector<Process> quadrature_allowed;
  const std::vector<HGIndex> first = hg_family(1);
  for (const HGIndex& pump : hg_family(2)) {
    for (std::size_t a = 0; a < first.size(); ++a) {
      for (std::size_t b = 0; b < first.size(); ++b) {
        const HGIndex s = first[a], i = first[b];
        const double reference = oracle::trapezoid_overlap(pump, s, i);
        const double value = overlap_integral(pump, s, i);
        if (parity_forbidden(pump, s, i)) {
          c.expect(reference == 0.0 && value == 0.0, "parity-forbidden overlap is not exactly zero");
        } else if (orthogonality_forbidden(pump, s, i)) {
          c.expect(std::abs(reference) < 1e-14 && value == 0.0, "orthogonality-forbidden overlap does not vanish");
        } else {
          c.expect(std::abs(reference) > 1e-3 && std::abs(value - reference) < 1e-12, "allowed overlap mismatch");
          if (a <= b) quadrature_allowed.push_back({pump, s, i});
        }
      }
    }
  }
  const std::vector<Process> fast = allowed_processes(2);
  c.expect(quadrature_allowed == fast, "selection-rule fast path differs from quadrature");
  c.expect(fast.size() == 3, "expected three processes");
  c.note << (c.ok ? "" : "; ") << fast.size() << " allowed processes";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"Fig. 1 PPT values", fig1_ppt},
      {"squeezing law", squeezing_law},
      {"edge-weight normalization", edge_weight_normalization},
      {"staggering pipeline equivalence", pipeline_equivalence},
      {"Fig. 3 lattice structure", fig3_structure},
      {"Fig. 4 time-varying structure", fig4_structure},
      {"Gaussian core contracts", gaussian_core},
      {"selection rules", selection_rules},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.ok = false;
      result.note << "exception: " << e.what();
    }
    failures += !result.ok;
    std::printf("criterion %zu %-34s %s  %s\n", i + 1, criteria[i].first.c_str(), result.ok ? "PASS" : "FAIL",
                result.note.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
