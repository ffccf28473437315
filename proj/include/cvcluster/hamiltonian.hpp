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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvcluster/modes.hpp"

namespace cvc {

/// Adjacency matrix of the parametric Hamiltonian over an ordered mode list.
/// The overall coupling constant is absorbed into the interaction strength
/// gamma used downstream.
struct HamiltonianGraph {
  std::vector<ModeId> modes;
  MatrixXd adjacency;
  std::vector<std::string> warnings;

  Index size() const { return static_cast<Index>(modes.size()); }
  std::optional<Index> index_of(const ModeId& mode) const;
};

/// Inclusive range of comb indices kept in a finite simulation.
struct FreqWindow {
  int n_min = 0;
  int n_max = 1;

  int size() const { return n_max - n_min + 1; }
  bool contains(int n) const { return n >= n_min && n <= n_max; }
  void validate() const;
};

struct PumpSpec {
  std::vector<PumpComponent> components;
};

/// Coupling block between {h, v} at one frequency and {h, v} at its partner:
/// (1/√2) [[cos2θ, sin2θ], [sin2θ, -cos2θ]].
Eigen::Matrix2d coupling_block(double theta);

/// 4-mode graph over (h, v) signal at comb index 0 and (h, v) idler at comb
/// index 1, i.e. positions 1..4 = {s.h, s.v, i.h, i.v}. Satisfies G² = I/2.
HamiltonianGraph quadripartite_graph(double theta);

/// Full comb graph for a multi-component pump truncated to `window`.
/// Mode n couples to p - n for every component p; pairs with a partner outside
/// the window stay uncoupled, and the self-paired index n = p/2 is skipped with
/// a warning. `bin` selects which angle a scheduled component contributes.
HamiltonianGraph comb_graph(const PumpSpec& pump, FreqWindow window, int bin = 0);

}  // namespace cvc
