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

#include <string>
#include <vector>

#include "cvcluster/gaussian.hpp"

namespace cvc {

/// A split of N modes into two nonempty sides. `left` holds the side written
/// first in the label (0-based positions, ascending); the label uses 1-based
/// positions, e.g. "1|234", "13|24".
struct Bipartition {
  std::vector<Index> left;
  std::string label;
};

inline constexpr int kMaxBipartitionModes = 20;

/// All 2^(n-1) - 1 bipartitions of n modes. Ordered by the size of the smaller
/// side, then lexicographically; for even n the half-half splits list only the
/// side containing mode 1. For n = 4 this gives
/// 1|234, 2|134, 3|124, 4|123, 12|34, 13|24, 14|23.
std::vector<Bipartition> enumerate_bipartitions(int n_modes);

/// PPT values over a θ grid for the rotated-pump quadripartite graph.
struct PptTable {
  std::vector<double> thetas;
  std::vector<Bipartition> bipartitions;
  MatrixXd values;  // rows: thetas, cols: bipartitions

  /// True iff every bipartition at grid row `i` has PPT value below 1 - margin.
  bool fully_inseparable(Index i, double margin = 0.0) const;
};

/// Evaluates the grid points independently on up to `threads` workers; the
/// result does not depend on the thread count.
PptTable ppt_scan(const std::vector<double>& theta_grid, double gamma, unsigned threads = 1);

/// `points` equally spaced angles over [0, π/4] inclusive.
std::vector<double> default_theta_grid(int points = 101);

}  // namespace cvc
