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

// Mode bookkeeping for a second-order structured pump driving first-order
// Hermite-Gaussian signal/idler modes.
//
// Overlap convention: signal and idler are normalized HG_mn at unit waist,
// u_mn(x, y) = phi_m(x) phi_n(y) with
// phi_m(x) = H_m(x) exp(-x^2 / 2) / sqrt(2^m m! sqrt(pi)); the pump is the
// same family at waist 1/√2, 2^{1/4} phi_m(√2 x) per axis. The overlap
// integral is only used as a selection rule (zero vs nonzero); coupling
// ratios in the Hamiltonian come from the pump amplitudes directly.
//
// The pump family lists HG20 -> h + h and HG02 -> v + v. Some sources write
// the first process as HG02 -> HG10 + HG10; the x-order of that triple
// cannot reach the pump's, so the orthogonality rule removes it.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvcluster/common.hpp"

namespace cvc {

struct HGIndex {
  int m = 0;  // x-order
  int n = 0;  // y-order

  constexpr int order() const { return m + n; }
  friend constexpr auto operator<=>(const HGIndex&, const HGIndex&) = default;
};

inline constexpr HGIndex kHG10{1, 0};
inline constexpr HGIndex kHG01{0, 1};
inline constexpr HGIndex kHG20{2, 0};
inline constexpr HGIndex kHG11{1, 1};
inline constexpr HGIndex kHG02{0, 2};

std::string to_string(HGIndex idx);

enum class Spatial : int { h = 0, v = 1 };

inline constexpr HGIndex hg_index(Spatial s) { return s == Spatial::h ? kHG10 : kHG01; }
char spatial_char(Spatial s);

/// A downconverted mode: first-order spatial component, comb index, time bin.
/// Ordered lexicographically by (freq, spatial, time).
struct ModeId {
  Spatial spatial = Spatial::h;
  int freq = 0;
  int time = 0;

  friend constexpr auto operator<=>(const ModeId& a, const ModeId& b) {
    if (auto c = a.freq <=> b.freq; c != 0) return c;
    if (auto c = static_cast<int>(a.spatial) <=> static_cast<int>(b.spatial); c != 0) return c;
    return a.time <=> b.time;
  }
  friend constexpr bool operator==(const ModeId&, const ModeId&) = default;
};

/// e.g. "h3" or "v-1@2" (freq 3 / freq -1 in bin 2). Bin 0 is omitted.
std::string to_string(const ModeId& mode);

/// One spectral component of the pump: comb index p and the rotation angle of
/// its second-order petal mode. A non-empty schedule overrides theta per bin.
struct PumpComponent {
  int p = 0;
  double theta = 0.0;
  double amplitude = 1.0;
  std::map<int, double> schedule;

  double theta_at(int bin) const;
  bool has_schedule() const { return !schedule.empty(); }
};

/// cos 2θ and sin 2θ, with magnitudes below 1e-14 flushed to exactly zero so
/// that angles such as π/4 give vanishing couplings rather than ~1e-17 residue.
struct DoubleAngle {
  double cos2 = 1.0;
  double sin2 = 0.0;
};
DoubleAngle double_angle(double theta);

/// Amplitudes of the pump on (HG20, HG11, HG02).
struct PumpAmplitudes {
  double hg20 = 0.0;
  double hg11 = 0.0;
  double hg02 = 0.0;
};

/// Decomposition of the rotated HG11 pump: (cos2θ/√2, sin2θ, -cos2θ/√2).
PumpAmplitudes pump_amplitudes(double theta);

inline constexpr int kMinOverlapResolution = 32;
inline constexpr int kDefaultOverlapResolution = 64;

/// True when the triple overlap is forced to zero by reflection parity in x or y.
constexpr bool parity_forbidden(HGIndex pump, HGIndex signal, HGIndex idler) {
  return (pump.m + signal.m + idler.m) % 2 != 0 || (pump.n + signal.n + idler.n) % 2 != 0;
}

/// With the pump waist matched to the signal-idler product, the signal-idler
/// product along one axis is a polynomial of degree m_s + m_i in the pump's
/// variable, orthogonal to any pump Hermite polynomial of higher degree.
constexpr bool orthogonality_forbidden(HGIndex pump, HGIndex signal, HGIndex idler) {
  return pump.m > signal.m + idler.m || pump.n > signal.n + idler.n;
}

constexpr bool selection_forbidden(HGIndex pump, HGIndex signal, HGIndex idler) {
  return parity_forbidden(pump, signal, idler) || orthogonality_forbidden(pump, signal, idler);
}

/// Gauss-Hermite nodes and weights for weight function exp(-x^2).
struct GaussHermiteRule {
  VectorXd nodes;
  VectorXd weights;
};
GaussHermiteRule gauss_hermite(int points);

/// Λ = ∫ u_pump u_signal u_idler d²r on a tensor-product Gauss-Hermite grid
/// with `resolution` points per axis. Signal and idler share waist w, the pump
/// has waist w/√2 so its Gaussian envelope matches their product. Triples
/// ruled out by selection_forbidden return 0.0 without touching the quadrature.
double overlap_integral(HGIndex pump, HGIndex signal, HGIndex idler,
                        int resolution = kDefaultOverlapResolution);

struct Process {
  HGIndex pump;
  HGIndex signal;
  HGIndex idler;
  friend constexpr auto operator<=>(const Process&, const Process&) = default;
};

/// Pump modes of the given order (m descending: HG20, HG11, HG02 for order 2).
std::vector<HGIndex> hg_family(int order);

/// Downconversion processes pump(order) -> first-order signal + idler allowed
/// by parity and orthogonality. Signal/idler pairs are unordered (signal <= idler).
std::vector<Process> allowed_processes(int pump_order);

/// Same as above, restricted to pump modes that carry nonzero amplitude.
std::vector<Process> allowed_processes(const PumpAmplitudes& amplitudes);

}  // namespace cvc
