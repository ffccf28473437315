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

#include "cvcluster/entanglement.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

namespace cvc {

namespace {

std::string label_side(const std::vector<Index>& side) {
  std::string out;
  for (Index i : side) out += std::to_string(i + 1);
  return out;
}

// Lexicographic k-subsets of {0..n-1}.
void for_each_combination(int n, int k, const auto& fn) {
  std::vector<Index> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<Bipartition> enumerate_bipartitions(int n_modes) {
  if (n_modes < 2 || n_modes > kMaxBipartitionModes) {
    throw InvalidArgument("bipartition enumeration needs 2 <= n_modes <= " +
                          std::to_string(kMaxBipartitionModes) + ", got " + std::to_string(n_modes));
  }
  std::vector<Bipartition> out;
  for (int k = 1; 2 * k <= n_modes; ++k) {
    for_each_combination(n_modes, k, [&](const std::vector<Index>& left) {
      if (2 * k == n_modes && left.front() != 0) return;
      std::vector<Index> right;
      for (Index i = 0, j = 0; i < n_modes; ++i) {
        if (j < k && left[j] == i) {
          ++j;
        } else {
          right.push_back(i);
        }
      }
      out.push_back({left, label_side(left) + "|" + label_side(right)});
    });
  }
  return out;
}

bool PptTable::fully_inseparable(Index i, double margin) const {
  return (values.row(i).array() < 1.0 - margin).all();
}

PptTable ppt_scan(const std::vector<double>& theta_grid, double gamma, unsigned threads) {
  if (theta_grid.empty()) throw InvalidArgument("theta grid is empty");
  if (!(gamma > 0.0)) throw InvalidArgument("ppt_scan requires gamma > 0");

  PptTable table;
  table.thetas = theta_grid;
  table.bipartitions = enumerate_bipartitions(4);
  const Index rows = static_cast<Index>(theta_grid.size());
  const Index cols = static_cast<Index>(table.bipartitions.size());
  table.values = MatrixXd::Zero(rows, cols);

  auto evaluate_row = [&](Index i) {
    const CovarianceState state = evolve_vacuum(quadripartite_graph(theta_grid[i]), gamma);
    for (Index j = 0; j < cols; ++j) {
      table.values(i, j) = ppt_value(state.covariance, std::span<const Index>(table.bipartitions[j].left));
    }
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(rows));
  if (workers == 1) {
    for (Index i = 0; i < rows; ++i) evaluate_row(i);
    return table;
  }
  // Strided rows per worker; each row is written by exactly one thread.
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Index i = w; i < rows; i += workers) evaluate_row(i);
    });
  }
  pool.clear();
  return table;
}

std::vector<double> default_theta_grid(int points) {
  if (points < 2) throw InvalidArgument("theta grid needs at least two points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = (std::numbers::pi / 4.0) * i / (points - 1);
  return grid;
}

}  // namespace cvc
