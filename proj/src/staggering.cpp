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

#include "cvcluster/staggering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvc {

void BinRange::validate() const {
  if (k_min > k_max || size() < 3) {
    throw InvalidArgument("bin range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                          "] must span at least three time bins");
  }
}

// ---------------------------------------------------------------------------
// Optical transforms

QuadratureForm apply_transform(const OpticalTransform& transform, const QuadratureForm& form) {
  if (form.has_p_terms()) {
    throw UnsupportedConfiguration("optical transforms act on Q-forms only; P terms present in " + form.to_string());
  }
  QuadratureForm out;
  switch (transform.kind) {
    case OpticalTransform::Kind::tbs_split:
      // Spatial separation relabels paths only; quadratures are unchanged.
      for (const auto& [key, value] : form.terms()) out.add(key, value);
      break;
    case OpticalTransform::Kind::delay:
      for (const auto& [key, value] : form.terms()) {
        QuadratureKey moved = key;
        if (moved.mode.spatial == transform.spatial) moved.mode.time += transform.shift;
        out.add(moved, value);
      }
      break;
    case OpticalTransform::Kind::rotation: {
      const double c = std::cos(transform.angle);
      const double s = std::sin(transform.angle);
      for (const auto& [key, value] : form.terms()) {
        const ModeId h{Spatial::h, key.mode.freq, key.mode.time};
        const ModeId v{Spatial::v, key.mode.freq, key.mode.time};
        if (key.mode.spatial == Spatial::h) {
          out.add({h, Quadrature::Q}, value * c).add({v, Quadrature::Q}, -value * s);
        } else {
          out.add({h, Quadrature::Q}, value * s).add({v, Quadrature::Q}, value * c);
        }
      }
      break;
    }
  }
  return out;
}

std::vector<OpticalTransform> staggering_line() {
  return {OpticalTransform::tbs_split(), OpticalTransform::delay(Spatial::v, 1),
          OpticalTransform::rotation(std::numbers::pi / 4.0)};
}

QuadratureForm staggering_substitution(const QuadratureForm& form) {
  QuadratureForm out = form;
  out.clear_anchor();
  for (const OpticalTransform& t : staggering_line()) out = apply_transform(t, out);
  return out;
}

QuadratureForm with_bin(const QuadratureForm& form, int bin) {
  QuadratureForm out;
  for (const auto& [key, value] : form.terms()) {
    QuadratureKey moved = key;
    moved.mode.time = bin;
    out.add(moved, value);
  }
  if (form.anchor()) {
    QuadratureKey anchor = *form.anchor();
    anchor.mode.time = bin;
    out.set_anchor(anchor);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schedules

PumpSchedule PumpSchedule::constant(double theta1, double theta2, BinRange bins) {
  PumpSchedule schedule;
  for (int k = bins.k_min; k <= bins.k_max; ++k) schedule.angles[k] = {theta1, theta2};
  return schedule;
}

PumpSchedule PumpSchedule::periodic(std::span<const std::pair<double, double>> pattern, BinRange bins) {
  if (pattern.empty()) throw InvalidArgument("periodic schedule needs a nonempty pattern");
  const int period = static_cast<int>(pattern.size());
  PumpSchedule schedule;
  for (int k = bins.k_min; k <= bins.k_max; ++k) {
    schedule.angles[k] = pattern[((k % period) + period) % period];
  }
  return schedule;
}

PumpSpec with_schedule(PumpSpec pump, const PumpSchedule& schedule) {
  validate_dual_pump(pump);
  pump.components[0].schedule.clear();
  pump.components[1].schedule.clear();
  for (const auto& [k, angles] : schedule.angles) {
    pump.components[0].schedule[k] = angles.first;
    pump.components[1].schedule[k] = angles.second;
  }
  return pump;
}

EdgeWeights edge_weights_at(const PumpSpec& pump, int bin) {
  validate_dual_pump(pump);
  return edge_weights(pump.components[0].theta_at(bin), pump.components[1].theta_at(bin));
}

bool is_constant_schedule(const PumpSpec& pump, BinRange bins) {
  validate_dual_pump(pump);
  for (const PumpComponent& comp : pump.components) {
    const double first = comp.theta_at(bins.k_min);
    for (int k = bins.k_min + 1; k <= bins.k_max; ++k) {
      if (comp.theta_at(k) != first) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Nullifiers

namespace {

struct FreqPartners {
  int n;
  int m1;  // p1 - n
  int m2;  // p2 - n
};

// Comb indices whose dual-rail nullifier is complete inside the window.
std::vector<FreqPartners> complete_indices(const PumpSpec& pump, FreqWindow window) {
  const int p1 = pump.components[0].p;
  const int p2 = pump.components[1].p;
  std::vector<FreqPartners> out;
  for (int n = window.n_min; n <= window.n_max; ++n) {
    const int m1 = p1 - n;
    const int m2 = p2 - n;
    if (m1 == n || m2 == n || !window.contains(m1) || !window.contains(m2)) continue;
    out.push_back({n, m1, m2});
  }
  return out;
}

void validate_inputs(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  window.validate();
  bins.validate();
  validate_dual_pump(pump);
  for (int k = bins.k_min; k <= bins.k_max; ++k) edge_weights_at(pump, k);  // throws on schedule gaps
}

NullifierSet empty_window_warning(FreqWindow window) {
  NullifierSet set;
  set.warnings.push_back("window [" + std::to_string(window.n_min) + ", " + std::to_string(window.n_max) +
                         "] contains no complete nullifier");
  return set;
}

QuadratureForm staggered_h(const FreqPartners& f, int k, const EdgeWeights& w) {
  QuadratureForm x;
  x.add(q_of(Spatial::h, f.n, k), 1.0).add(q_of(Spatial::v, f.n, k), -1.0);
  x.add(q_of(Spatial::h, f.m1, k), -w.a).add(q_of(Spatial::v, f.m1, k), w.a);
  x.add(q_of(Spatial::h, f.m1, k + 1), -w.b).add(q_of(Spatial::v, f.m1, k + 1), -w.b);
  x.add(q_of(Spatial::h, f.m2, k), -w.c).add(q_of(Spatial::v, f.m2, k), w.c);
  x.add(q_of(Spatial::h, f.m2, k + 1), -w.d).add(q_of(Spatial::v, f.m2, k + 1), -w.d);
  return x;
}

QuadratureForm staggered_v(const FreqPartners& f, int k, const EdgeWeights& w) {
  QuadratureForm x;
  x.add(q_of(Spatial::h, f.n, k + 1), 1.0).add(q_of(Spatial::v, f.n, k + 1), 1.0);
  x.add(q_of(Spatial::h, f.m1, k), -w.b).add(q_of(Spatial::v, f.m1, k), w.b);
  x.add(q_of(Spatial::h, f.m1, k + 1), w.a).add(q_of(Spatial::v, f.m1, k + 1), w.a);
  x.add(q_of(Spatial::h, f.m2, k), -w.d).add(q_of(Spatial::v, f.m2, k), w.d);
  x.add(q_of(Spatial::h, f.m2, k + 1), w.c).add(q_of(Spatial::v, f.m2, k + 1), w.c);
  return x;
}

}  // namespace

NullifierSet staggered_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  validate_inputs(pump, window, bins);
  const std::vector<FreqPartners> freqs = complete_indices(pump, window);
  if (freqs.empty()) return empty_window_warning(window);
  NullifierSet set;
  for (int k = bins.k_min; k < bins.k_max; ++k) {
    const EdgeWeights w = edge_weights_at(pump, k);
    for (const FreqPartners& f : freqs) {
      set.forms.push_back(staggered_h(f, k, w));
      set.forms.push_back(staggered_v(f, k, w));
    }
  }
  return set;
}

NullifierSet macronode_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  validate_inputs(pump, window, bins);
  if (!is_constant_schedule(pump, bins)) {
    throw InvalidArgument("closed-form macronode nullifiers need a constant pump; use the time-varying path");
  }
  const std::vector<FreqPartners> freqs = complete_indices(pump, window);
  if (freqs.empty()) return empty_window_warning(window);
  const EdgeWeights w = edge_weights_at(pump, bins.k_min);
  const double hb = w.b / 2.0;
  const double hd = w.d / 2.0;

  NullifierSet set;
  for (int k = bins.k_min + 1; k < bins.k_max; ++k) {
    for (const FreqPartners& f : freqs) {
      QuadratureForm plus;
      plus.add(q_of(Spatial::h, f.n, k), 1.0);
      plus.add(q_of(Spatial::v, f.m1, k), w.a).add(q_of(Spatial::v, f.m2, k), w.c);
      plus.add(q_of(Spatial::h, f.m1, k + 1), -hb).add(q_of(Spatial::v, f.m1, k + 1), -hb);
      plus.add(q_of(Spatial::h, f.m1, k - 1), -hb).add(q_of(Spatial::v, f.m1, k - 1), hb);
      plus.add(q_of(Spatial::h, f.m2, k + 1), -hd).add(q_of(Spatial::v, f.m2, k + 1), -hd);
      plus.add(q_of(Spatial::h, f.m2, k - 1), -hd).add(q_of(Spatial::v, f.m2, k - 1), hd);
      plus.set_anchor(q_of(Spatial::h, f.n, k));

      QuadratureForm minus;
      minus.add(q_of(Spatial::v, f.n, k), 1.0);
      minus.add(q_of(Spatial::h, f.m1, k), w.a).add(q_of(Spatial::h, f.m2, k), w.c);
      minus.add(q_of(Spatial::h, f.m1, k + 1), hb).add(q_of(Spatial::v, f.m1, k + 1), hb);
      minus.add(q_of(Spatial::h, f.m1, k - 1), -hb).add(q_of(Spatial::v, f.m1, k - 1), hb);
      minus.add(q_of(Spatial::h, f.m2, k + 1), hd).add(q_of(Spatial::v, f.m2, k + 1), hd);
      minus.add(q_of(Spatial::h, f.m2, k - 1), -hd).add(q_of(Spatial::v, f.m2, k - 1), hd);
      minus.set_anchor(q_of(Spatial::v, f.n, k));

      set.forms.push_back(std::move(plus));
      set.forms.push_back(std::move(minus));
    }
  }
  return set;
}

NullifierSet recombined_macronode_nullifiers(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  validate_inputs(pump, window, bins);
  const std::vector<FreqPartners> freqs = complete_indices(pump, window);
  if (freqs.empty()) return empty_window_warning(window);

  NullifierSet set;
  for (int k = bins.k_min + 1; k < bins.k_max; ++k) {
    const EdgeWeights previous = edge_weights_at(pump, k - 1);
    const EdgeWeights current = edge_weights_at(pump, k);
    for (const FreqPartners& f : freqs) {
      const QuadratureForm xv = staggered_v(f, k - 1, previous);
      const QuadratureForm xh = staggered_h(f, k, current);
      QuadratureForm plus = (xv + xh) * 0.5;
      plus.set_anchor(q_of(Spatial::h, f.n, k));
      QuadratureForm minus = (xv - xh) * 0.5;
      minus.set_anchor(q_of(Spatial::v, f.n, k));
      set.forms.push_back(std::move(plus));
      set.forms.push_back(std::move(minus));
    }
  }
  return set;
}

std::vector<ModeId> bulk_nodes(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  validate_inputs(pump, window, bins);
  std::vector<ModeId> out;
  for (const FreqPartners& f : complete_indices(pump, window)) {
    for (int k = bins.k_min + 1; k < bins.k_max; ++k) {
      out.push_back({Spatial::h, f.n, k});
      out.push_back({Spatial::v, f.n, k});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

ClusterGraph compile_lattice(const NullifierSet& set) {
  ClusterGraph graph = graph_from_nullifiers(set.forms);
  graph.macronodes = macronode_pairs(graph.nodes);
  return graph;
}

}  // namespace

ClusterGraph lattice_2d(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  return compile_lattice(macronode_nullifiers(pump, window, bins));
}

ClusterGraph time_varying_lattice(const PumpSpec& pump, FreqWindow window, BinRange bins) {
  return compile_lattice(recombined_macronode_nullifiers(pump, window, bins));
}

}  // namespace cvc
