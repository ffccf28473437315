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

// Time staggering of dual-rail wires into 2D macronode lattices.
//
// The OPO output (stage 0) is split by spatial mode, the v line is delayed by
// one time bin and both are recombined through a π/4 mode rotation (stage 2).
// Expressed as a substitution of stage-0 quadratures:
//
//   Q_{h,k} -> (Q_{h,k}   - Q_{v,k}  ) / √2
//   Q_{v,k} -> (Q_{h,k+1} + Q_{v,k+1}) / √2
//
// applied independently at every comb index. Only Q-forms are tracked.
//
// Staggered nullifiers X_{h,k}, X_{v,k} are written without the overall 1/√2
// (anchor pair Q_{h,k} ∓ Q_{v,k} with unit coefficients). Macronode nullifiers
// recombine them as
//
//   X⁺_k = (X_{v,k-1} + X_{h,k}) / 2,   X⁻_k = (X_{v,k-1} - X_{h,k}) / 2,
//
// anchored at Q^n_{h,k} and Q^n_{v,k}. With a time-varying pump, X_{v,k-1}
// carries the edge weights of bin k-1 and X_{h,k} those of bin k. For
// example, the same-bin coefficient of Q^{p1-n}_{h,k} in X⁺_k becomes
// (a_{k-1} - a_k)/2, which vanishes exactly for a constant pump, while that of
// Q^{p1-n}_{v,k} becomes (a_{k-1} + a_k)/2 = a.

#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cvcluster/clusters.hpp"

namespace cvc {

/// Inclusive range of simulated time bins.
struct BinRange {
  int k_min = 0;
  int k_max = 2;

  int size() const { return k_max - k_min + 1; }
  bool contains(int k) const { return k >= k_min && k <= k_max; }
  void validate() const;
};

struct OpticalTransform {
  enum class Kind { tbs_split, delay, rotation };

  Kind kind = Kind::tbs_split;
  Spatial spatial = Spatial::v;  // delay only
  int shift = 0;                 // delay only
  double angle = 0.0;            // rotation only, clockwise

  static OpticalTransform tbs_split() { return {}; }
  static OpticalTransform delay(Spatial s, int bins) { return {Kind::delay, s, bins, 0.0}; }
  static OpticalTransform rotation(double radians) { return {Kind::rotation, Spatial::v, 0, radians}; }
};

/// Rewrites a Q-form over the transform's input quadratures in terms of its
/// output quadratures. Throws UnsupportedConfiguration on P terms.
QuadratureForm apply_transform(const OpticalTransform& transform, const QuadratureForm& form);

/// Mode splitter, one-bin delay of the v line, π/4 rotation.
std::vector<OpticalTransform> staggering_line();

/// Applies staggering_line() in order. The result has no anchor.
QuadratureForm staggering_substitution(const QuadratureForm& form);

/// Copy of `form` with every mode (and the anchor) moved to time bin `bin`.
QuadratureForm with_bin(const QuadratureForm& form, int bin);

/// Per-bin pump angles (θ₁(k), θ₂(k)).
struct PumpSchedule {
  std::map<int, std::pair<double, double>> angles;

  static PumpSchedule constant(double theta1, double theta2, BinRange bins);
  /// angles[k] = pattern[k mod pattern.size()] for every k in `bins`.
  static PumpSchedule periodic(std::span<const std::pair<double, double>> pattern, BinRange bins);
};

/// Copy of a two-component pump carrying the schedule on its components.
PumpSpec with_schedule(PumpSpec pump, const PumpSchedule& schedule);

/// Edge weights seen by the wire emitted in `bin`.
EdgeWeights edge_weights_at(const PumpSpec& pump, int bin);

/// True when every bin in range sees the same pump angles.
bool is_constant_schedule(const PumpSpec& pump, BinRange bins);

/// X_{h,k} and X_{v,k} for every complete comb index n and every k with k+1
/// in range, ordered by (k, n, h before v). Per-bin weights come from the
/// pump schedule.
NullifierSet staggered_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins);

/// Closed-form X⁺_k / X⁻_k for bulk bins (k-1 and k+1 in range). Requires a
/// constant schedule.
NullifierSet macronode_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins);

/// X⁺_k / X⁻_k obtained by recombining staggered_nullifiers, valid for any
/// schedule. Same ordering as macronode_nullifiers.
NullifierSet recombined_macronode_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins);

/// Anchor modes of the macronode nullifiers: complete comb indices in bulk bins.
std::vector<ModeId> bulk_nodes(const PumpSpec& pump, FreqWindow window, BinRange bins);

/// 2D macronode lattice compiled from the closed-form nullifiers.
ClusterGraph lattice_2d(const PumpSpec& pump, FreqWindow window, BinRange bins);

/// Lattice for a time-varying pump; every bin in range must have angles.
/// For a constant schedule the result equals lattice_2d bit for bit.
ClusterGraph time_varying_lattice(const PumpSpec& pump, FreqWindow window, BinRange bins);

}  // namespace cvc
