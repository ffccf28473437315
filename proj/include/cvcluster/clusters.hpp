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

// Nullifier algebra and cluster-graph compilation.
//
// A nullifier in standard form has one anchor quadrature Q_j with coefficient
// +1 and further Q terms on other modes; it encodes the edges
// (j, k, -coefficient(Q_k)). Graphs are compiled from Q-forms only; the
// matching P-forms are provided for variance checks.

#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvcluster/gaussian.hpp"

namespace cvc {

enum class Quadrature : int { Q = 0, P = 1 };

struct QuadratureKey {
  ModeId mode;
  Quadrature quadrature = Quadrature::Q;

  friend constexpr auto operator<=>(const QuadratureKey& a, const QuadratureKey& b) {
    if (auto c = static_cast<int>(a.quadrature) <=> static_cast<int>(b.quadrature); c != 0) return c;
    return a.mode <=> b.mode;
  }
  friend constexpr bool operator==(const QuadratureKey&, const QuadratureKey&) = default;
};

inline QuadratureKey q_of(Spatial s, int freq, int time = 0) { return {{s, freq, time}, Quadrature::Q}; }
inline QuadratureKey p_of(Spatial s, int freq, int time = 0) { return {{s, freq, time}, Quadrature::P}; }

/// Sparse real linear combination of quadratures. Zero coefficients are never
/// stored. An optional anchor marks the standard-form node of a nullifier.
class QuadratureForm {
 public:
  using Terms = std::map<QuadratureKey, double>;

  QuadratureForm() = default;

  /// Adds `coefficient` to the term for `key`, erasing it if the sum is 0.
  QuadratureForm& add(const QuadratureKey& key, double coefficient);
  double coefficient(const QuadratureKey& key) const;
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool has_p_terms() const;

  double norm() const;
  /// Euclidean inner product of coefficient vectors.
  double dot(const QuadratureForm& other) const;

  const std::optional<QuadratureKey>& anchor() const { return anchor_; }
  QuadratureForm& set_anchor(const QuadratureKey& key);
  QuadratureForm& clear_anchor();

  QuadratureForm& operator+=(const QuadratureForm& other);
  QuadratureForm& operator-=(const QuadratureForm& other);
  QuadratureForm& operator*=(double scale);
  friend QuadratureForm operator+(QuadratureForm a, const QuadratureForm& b) { return a += b; }
  friend QuadratureForm operator-(QuadratureForm a, const QuadratureForm& b) { return a -= b; }
  friend QuadratureForm operator*(QuadratureForm a, double s) { return a *= s; }
  friend QuadratureForm operator*(double s, QuadratureForm a) { return a *= s; }

  /// Largest absolute coefficient difference over the union of terms.
  double max_abs_difference(const QuadratureForm& other) const;

  std::string to_string() const;

 private:
  Terms terms_;
  std::optional<QuadratureKey> anchor_;
};

/// Cluster edge weights of the dual-frequency rotated pump:
/// a = cos2θ₁/(2r), b = sin2θ₁/(√2 r), c = cos2θ₂/(2r), d = sin2θ₂/(√2 r),
/// r = sqrt(6 - cos4θ₁ - cos4θ₂) / (2√2); a² + b² + c² + d² = 1.
struct EdgeWeights {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double r = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

EdgeWeights edge_weights(double theta1, double theta2);

struct ClusterEdge {
  ModeId u;  // u < v
  ModeId v;
  double weight = 0.0;
};

struct ClusterGraph {
  std::vector<ModeId> nodes;        // ascending
  std::vector<ClusterEdge> edges;   // ascending by (u, v)
  std::vector<std::array<ModeId, 2>> macronodes;  // (h, v) pairs sharing freq and bin

  std::optional<std::size_t> index_of(const ModeId& mode) const;
  std::size_t degree(const ModeId& mode) const;
  std::optional<double> weight(const ModeId& a, const ModeId& b) const;
};

/// Connected components of the subgraph induced by `subset` (all nodes when
/// empty). Each component is sorted; components are ordered by first node.
std::vector<std::vector<ModeId>> connected_components(const ClusterGraph& graph,
                                                      std::span<const ModeId> subset = {});

/// Groups every (h, n, k) / (v, n, k) pair present in the node list.
std::vector<std::array<ModeId, 2>> macronode_pairs(const std::vector<ModeId>& nodes);

struct NullifierSet {
  std::vector<QuadratureForm> forms;
  std::vector<std::string> warnings;
};

/// Two-component pump {p1, θ1}, {p2, θ2} with equal amplitudes, as used by the
/// dual-rail and lattice constructions. Throws InvalidArgument otherwise.
void validate_dual_pump(const PumpSpec& pump);

/// Q-nullifiers of the dual-rail wire, one X_h(n) and X_v(n) for every n whose
/// partners p1 - n and p2 - n are inside the window:
///   X_h(n) = Q_h^n - [a Q_h^{p1-n} + b Q_v^{p1-n} + c Q_h^{p2-n} + d Q_v^{p2-n}]
///   X_v(n) = Q_v^n - [b Q_h^{p1-n} - a Q_v^{p1-n} + d Q_h^{p2-n} - c Q_v^{p2-n}]
/// Incomplete nullifiers are dropped, never truncated.
NullifierSet dual_rail_nullifiers(const PumpSpec& pump, FreqWindow window);

/// The squeezed P-quadrature partners of the dual-rail Q-nullifiers: same
/// anchors, neighbor coefficients with flipped sign.
NullifierSet dual_rail_p_nullifiers(const PumpSpec& pump, FreqWindow window);

/// Compiles standard-form Q-nullifiers into a weighted graph. Every referenced
/// mode becomes a node. When a neighbor is itself an anchor its nullifier must
/// reference the first anchor back with the same weight (within 1e-12).
/// Throws MalformedNullifier or InconsistentGraph.
ClusterGraph graph_from_nullifiers(std::span<const QuadratureForm> nullifiers);

/// vᵀ V v for each nullifier after normalization to a unit vector.
std::vector<double> nullifier_variances(const CovarianceState& state,
                                        std::span<const QuadratureForm> nullifiers);

inline constexpr double kReciprocityTolerance = 1e-12;

}  // namespace cvc
