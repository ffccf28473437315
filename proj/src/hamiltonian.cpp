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

#include "cvcluster/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace cvc {

std::optional<Index> HamiltonianGraph::index_of(const ModeId& mode) const {
  auto it = std::lower_bound(modes.begin(), modes.end(), mode);
  if (it == modes.end() || *it != mode) return std::nullopt;
  return static_cast<Index>(it - modes.begin());
}

void FreqWindow::validate() const {
  if (n_min > n_max || size() < 2) {
    throw InvalidArgument("frequency window [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
                          "] must contain at least two comb indices");
  }
}

Eigen::Matrix2d coupling_block(double theta) {
  const DoubleAngle t = double_angle(theta);
  const double c = t.cos2 / std::numbers::sqrt2;
  const double s = t.sin2 / std::numbers::sqrt2;
  Eigen::Matrix2d alpha;
  alpha << c, s, s, -c;
  return alpha;
}

HamiltonianGraph quadripartite_graph(double theta) {
  HamiltonianGraph g;
  g.modes = {{Spatial::h, 0, 0}, {Spatial::v, 0, 0}, {Spatial::h, 1, 0}, {Spatial::v, 1, 0}};
  g.adjacency = MatrixXd::Zero(4, 4);
  const Eigen::Matrix2d alpha = coupling_block(theta);
  g.adjacency.topRightCorner<2, 2>() = alpha;
  g.adjacency.bottomLeftCorner<2, 2>() = alpha;
  return g;
}

HamiltonianGraph comb_graph(const PumpSpec& pump, FreqWindow window, int bin) {
  window.validate();
  std::set<int> seen;
  for (const PumpComponent& comp : pump.components) {
    if (!seen.insert(comp.p).second) {
      throw InvalidArgument("pump components must have distinct comb indices, p=" + std::to_string(comp.p) +
                            " repeats");
    }
    if (!(comp.amplitude > 0.0)) throw InvalidArgument("pump amplitude must be positive");
  }

  HamiltonianGraph g;
  for (int n = window.n_min; n <= window.n_max; ++n) {
    g.modes.push_back({Spatial::h, n, 0});
    g.modes.push_back({Spatial::v, n, 0});
  }
  g.adjacency = MatrixXd::Zero(g.size(), g.size());
  // Modes are (h, v) pairs in ascending n, so (s, n) sits at 2 (n - n_min) + s.
  auto row = [&](int n) { return static_cast<Index>(2 * (n - window.n_min)); };

  for (const PumpComponent& comp : pump.components) {
    const Eigen::Matrix2d alpha = comp.amplitude * coupling_block(comp.theta_at(bin));
    for (int n = window.n_min; n <= window.n_max; ++n) {
      const int partner = comp.p - n;
      if (partner == n) {
        g.warnings.push_back("comb index " + std::to_string(n) + " is self-paired by pump p=" +
                             std::to_string(comp.p) + "; excluded from coupling");
        continue;
      }
      if (partner < n || !window.contains(partner)) continue;
      g.adjacency.block<2, 2>(row(n), row(partner)) = alpha;
      g.adjacency.block<2, 2>(row(partner), row(n)) = alpha.transpose();
    }
  }
  return g;
}

}  // namespace cvc
