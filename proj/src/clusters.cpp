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

#include "cvcluster/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace cvc {

// ---------------------------------------------------------------------------
// QuadratureForm

QuadratureForm& QuadratureForm::add(const QuadratureKey& key, double coefficient) {
  if (coefficient == 0.0) return *this;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

double QuadratureForm::coefficient(const QuadratureKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0.0 : it->second;
}

bool QuadratureForm::has_p_terms() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.quadrature == Quadrature::P; });
}

double QuadratureForm::norm() const { return std::sqrt(dot(*this)); }

double QuadratureForm::dot(const QuadratureForm& other) const {
  double sum = 0.0;
  for (const auto& [key, value] : terms_) sum += value * other.coefficient(key);
  return sum;
}

QuadratureForm& QuadratureForm::set_anchor(const QuadratureKey& key) {
  anchor_ = key;
  return *this;
}

QuadratureForm& QuadratureForm::clear_anchor() {
  anchor_.reset();
  return *this;
}

QuadratureForm& QuadratureForm::operator+=(const QuadratureForm& other) {
  for (const auto& [key, value] : other.terms_) add(key, value);
  return *this;
}

QuadratureForm& QuadratureForm::operator-=(const QuadratureForm& other) {
  for (const auto& [key, value] : other.terms_) add(key, -value);
  return *this;
}

QuadratureForm& QuadratureForm::operator*=(double scale) {
  if (scale == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, value] : terms_) value *= scale;
  return *this;
}

double QuadratureForm::max_abs_difference(const QuadratureForm& other) const {
  double worst = 0.0;
  for (const auto& [key, value] : terms_) worst = std::max(worst, std::abs(value - other.coefficient(key)));
  for (const auto& [key, value] : other.terms_) worst = std::max(worst, std::abs(value - coefficient(key)));
  return worst;
}

std::string QuadratureForm::to_string() const {
  std::ostringstream out;
  out.precision(6);
  bool first = true;
  for (const auto& [key, value] : terms_) {
    if (!first || value < 0.0) out << (value < 0.0 ? " - " : " + ");
    out << std::abs(value) << (key.quadrature == Quadrature::Q ? "Q" : "P") << "[" << cvc::to_string(key.mode)
        << "]";
    first = false;
  }
  return first ? "0" : out.str();
}

// ---------------------------------------------------------------------------
// Edge weights and dual-rail nullifiers

EdgeWeights edge_weights(double theta1, double theta2) {
  EdgeWeights w;
  w.theta1 = theta1;
  w.theta2 = theta2;
  const DoubleAngle t1 = double_angle(theta1);
  const DoubleAngle t2 = double_angle(theta2);
  // cos 4θ = cos² 2θ - sin² 2θ, taken from the flushed double-angle values.
  const double cos4_1 = t1.cos2 * t1.cos2 - t1.sin2 * t1.sin2;
  const double cos4_2 = t2.cos2 * t2.cos2 - t2.sin2 * t2.sin2;
  w.r = std::sqrt(6.0 - cos4_1 - cos4_2) / (2.0 * std::numbers::sqrt2);
  w.a = t1.cos2 / (2.0 * w.r);
  w.b = t1.sin2 / (std::numbers::sqrt2 * w.r);
  w.c = t2.cos2 / (2.0 * w.r);
  w.d = t2.sin2 / (std::numbers::sqrt2 * w.r);
  return w;
}

void validate_dual_pump(const PumpSpec& pump) {
  if (pump.components.size() != 2) {
    throw InvalidArgument("dual-frequency construction needs exactly two pump components, got " +
                          std::to_string(pump.components.size()));
  }
  const PumpComponent& c1 = pump.components[0];
  const PumpComponent& c2 = pump.components[1];
  if (c1.p == c2.p) throw InvalidArgument("pump comb indices p1 and p2 must differ");
  if (c1.amplitude != c2.amplitude || !(c1.amplitude > 0.0)) {
    throw InvalidArgument("dual-rail nullifiers assume equal, positive pump amplitudes");
  }
}

namespace {

enum class Sector { q, p };

NullifierSet build_dual_rail(const PumpSpec& pump, FreqWindow window, Sector sector) {
  window.validate();
  validate_dual_pump(pump);
  const int p1 = pump.components[0].p;
  const int p2 = pump.components[1].p;
  const EdgeWeights w = edge_weights(pump.components[0].theta, pump.components[1].theta);
  const Quadrature quad = sector == Sector::q ? Quadrature::Q : Quadrature::P;
  // Q-forms subtract the neighbor terms, P-forms add them.
  const double sign = sector == Sector::q ? -1.0 : 1.0;
  auto key = [quad](Spatial s, int n) { return QuadratureKey{{s, n, 0}, quad}; };

  NullifierSet set;
  for (int n = window.n_min; n <= window.n_max; ++n) {
    const int m1 = p1 - n;
    const int m2 = p2 - n;
    if (m1 == n || m2 == n) {
      set.warnings.push_back("comb index " + std::to_string(n) + " is self-paired; no nullifier emitted");
      continue;
    }
    if (!window.contains(m1) || !window.contains(m2)) continue;

    QuadratureForm xh;
    xh.add(key(Spatial::h, n), 1.0)
        .add(key(Spatial::h, m1), sign * w.a)
        .add(key(Spatial::v, m1), sign * w.b)
        .add(key(Spatial::h, m2), sign * w.c)
        .add(key(Spatial::v, m2), sign * w.d)
        .set_anchor(key(Spatial::h, n));
    QuadratureForm xv;
    xv.add(key(Spatial::v, n), 1.0)
        .add(key(Spatial::h, m1), sign * w.b)
        .add(key(Spatial::v, m1), -sign * w.a)
        .add(key(Spatial::h, m2), sign * w.d)
        .add(key(Spatial::v, m2), -sign * w.c)
        .set_anchor(key(Spatial::v, n));
    set.forms.push_back(std::move(xh));
    set.forms.push_back(std::move(xv));
  }
  if (set.forms.empty()) {
    set.warnings.push_back("window [" + std::to_string(window.n_min) + ", " + std::to_string(window.n_max) +
                           "] contains no complete nullifier");
  }
  return set;
}

}  // namespace

NullifierSet dual_rail_nullifiers(const PumpSpec& pump, FreqWindow window) {
  return build_dual_rail(pump, window, Sector::q);
}

NullifierSet dual_rail_p_nullifiers(const PumpSpec& pump, FreqWindow window) {
  return build_dual_rail(pump, window, Sector::p);
}

// ---------------------------------------------------------------------------
// Graph compilation

namespace {

QuadratureKey find_anchor(const QuadratureForm& form, std::size_t index) {
  const std::string where = "nullifier #" + std::to_string(index);
  if (form.empty()) throw MalformedNullifier(where + " is empty");
  if (form.has_p_terms()) throw MalformedNullifier(where + " contains P quadratures; graphs compile from Q-forms");
  if (form.anchor()) {
    const QuadratureKey key = *form.anchor();
    if (std::abs(form.coefficient(key) - 1.0) > kReciprocityTolerance) {
      throw MalformedNullifier(where + " anchor " + to_string(key.mode) + " does not have coefficient +1");
    }
    return key;
  }
  std::optional<QuadratureKey> found;
  for (const auto& [key, value] : form.terms()) {
    if (std::abs(value - 1.0) <= kReciprocityTolerance) {
      if (found) throw MalformedNullifier(where + " has more than one candidate anchor with coefficient +1");
      found = key;
    }
  }
  if (!found) throw MalformedNullifier(where + " has no anchor with coefficient +1");
  return *found;
}

}  // namespace

ClusterGraph graph_from_nullifiers(std::span<const QuadratureForm> nullifiers) {
  std::map<ModeId, std::size_t> anchor_of;
  std::vector<ModeId> anchors;
  anchors.reserve(nullifiers.size());
  for (std::size_t i = 0; i < nullifiers.size(); ++i) {
    const ModeId mode = find_anchor(nullifiers[i], i).mode;
    if (!anchor_of.emplace(mode, i).second) {
      throw MalformedNullifier("two nullifiers share the anchor " + to_string(mode));
    }
    anchors.push_back(mode);
  }

  std::set<ModeId> nodes;
  std::map<std::pair<ModeId, ModeId>, double> edges;
  for (std::size_t i = 0; i < nullifiers.size(); ++i) {
    const ModeId& anchor = anchors[i];
    nodes.insert(anchor);
    for (const auto& [key, value] : nullifiers[i].terms()) {
      if (key.mode == anchor) continue;
      nodes.insert(key.mode);
      const double weight = -value;
      if (auto other = anchor_of.find(key.mode); other != anchor_of.end()) {
        const double back = -nullifiers[other->second].coefficient({anchor, Quadrature::Q});
        if (back == 0.0) {
          throw InconsistentGraph("nullifier anchored at " + to_string(key.mode) + " does not reference " +
                                  to_string(anchor));
        }
        if (std::abs(back - weight) > kReciprocityTolerance) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "edge " << to_string(anchor) << " -- " << to_string(key.mode) << " has weight " << weight
              << " from one side and " << back << " from the other";
          throw InconsistentGraph(msg.str());
        }
      }
      const auto edge_key = std::minmax(anchor, key.mode);
      // Keep the weight seen from the smaller anchor so the result does not
      // depend on nullifier order.
      auto [it, inserted] = edges.try_emplace({edge_key.first, edge_key.second}, weight);
      if (!inserted && anchor == edge_key.first) it->second = weight;
    }
  }

  ClusterGraph graph;
  graph.nodes.assign(nodes.begin(), nodes.end());
  graph.edges.reserve(edges.size());
  for (const auto& [uv, weight] : edges) graph.edges.push_back({uv.first, uv.second, weight});
  return graph;
}

std::optional<std::size_t> ClusterGraph::index_of(const ModeId& mode) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), mode);
  if (it == nodes.end() || *it != mode) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::size_t ClusterGraph::degree(const ModeId& mode) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const ClusterEdge& e) { return e.u == mode || e.v == mode; }));
}

std::optional<double> ClusterGraph::weight(const ModeId& a, const ModeId& b) const {
  const auto [u, v] = std::minmax(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{u, v}, [](const ClusterEdge& e, const auto& key) {
    return std::pair{e.u, e.v} < key;
  });
  if (it == edges.end() || it->u != u || it->v != v) return std::nullopt;
  return it->weight;
}

std::vector<std::vector<ModeId>> connected_components(const ClusterGraph& graph, std::span<const ModeId> subset) {
  std::vector<ModeId> members = subset.empty() ? graph.nodes : std::vector<ModeId>(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  auto index = [&](const ModeId& m) -> std::optional<std::size_t> {
    auto it = std::lower_bound(members.begin(), members.end(), m);
    if (it == members.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
  };

  // Union-find over the induced subgraph.
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const ClusterEdge& e : graph.edges) {
    auto a = index(e.u);
    auto b = index(e.v);
    if (a && b) {
      const std::size_t ra = find(*a);
      const std::size_t rb = find(*b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::map<std::size_t, std::vector<ModeId>> groups;
  for (std::size_t i = 0; i < members.size(); ++i) groups[find(i)].push_back(members[i]);
  std::vector<std::vector<ModeId>> out;
  for (auto& [root, group] : groups) out.push_back(std::move(group));
  return out;
}

std::vector<std::array<ModeId, 2>> macronode_pairs(const std::vector<ModeId>& nodes) {
  std::set<ModeId> present(nodes.begin(), nodes.end());
  std::vector<std::array<ModeId, 2>> out;
  for (const ModeId& m : present) {
    if (m.spatial != Spatial::h) continue;
    const ModeId partner{Spatial::v, m.freq, m.time};
    if (present.count(partner)) out.push_back({m, partner});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variances

std::vector<double> nullifier_variances(const CovarianceState& state, std::span<const QuadratureForm> nullifiers) {
  std::map<ModeId, Index> position;
  for (Index i = 0; i < state.basis.size(); ++i) position.emplace(state.basis.modes[i], i);

  std::vector<double> out;
  out.reserve(nullifiers.size());
  for (const QuadratureForm& form : nullifiers) {
    VectorXd v = VectorXd::Zero(2 * state.basis.size());
    for (const auto& [key, value] : form.terms()) {
      auto it = position.find(key.mode);
      if (it == position.end()) {
        throw InvalidArgument("nullifier references mode " + to_string(key.mode) + " absent from the state");
      }
      const Index row = key.quadrature == Quadrature::Q ? state.basis.q_index(it->second)
                                                         : state.basis.p_index(it->second);
      v[row] = value;
    }
    const double norm = v.norm();
    if (norm == 0.0) throw InvalidArgument("cannot evaluate the variance of an empty nullifier");
    out.push_back(quadrature_variance(state.covariance, v / norm));
  }
  return out;
}

}  // namespace cvc
