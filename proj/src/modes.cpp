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

#include "cvcluster/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvc {

std::string to_string(HGIndex idx) {
  return "HG" + std::to_string(idx.m) + std::to_string(idx.n);
}

char spatial_char(Spatial s) { return s == Spatial::h ? 'h' : 'v'; }

std::string to_string(const ModeId& mode) {
  std::string out(1, spatial_char(mode.spatial));
  out += std::to_string(mode.freq);
  if (mode.time != 0) out += "@" + std::to_string(mode.time);
  return out;
}

double PumpComponent::theta_at(int bin) const {
  if (schedule.empty()) return theta;
  auto it = schedule.find(bin);
  if (it == schedule.end()) {
    throw InvalidArgument("pump schedule for p=" + std::to_string(p) +
                          " has no angle for time bin " + std::to_string(bin));
  }
  return it->second;
}

DoubleAngle double_angle(double theta) {
  auto flush = [](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; };
  return {flush(std::cos(2.0 * theta)), flush(std::sin(2.0 * theta))};
}

PumpAmplitudes pump_amplitudes(double theta) {
  const DoubleAngle t = double_angle(theta);
  const double c = t.cos2 / std::numbers::sqrt2;
  return {c, t.sin2, -c};
}

GaussHermiteRule gauss_hermite(int points) {
  if (points < 1) throw InvalidArgument("Gauss-Hermite rule needs at least one point");
  // Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
  // physicists' Hermite recurrence.
  MatrixXd jacobi = MatrixXd::Zero(points, points);
  for (int i = 1; i < points; ++i) {
    const double off = std::sqrt(0.5 * i);
    jacobi(i, i - 1) = off;
    jacobi(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = std::sqrt(std::numbers::pi) * solver.eigenvectors().row(0).array().square().transpose();
  return rule;
}

namespace {

// Normalized 1D Hermite function without its Gaussian factor:
// H_m(x) / sqrt(2^m m! sqrt(pi)).
double hermite_poly_normalized(int m, double x) {
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < m; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  const double norm = std::sqrt(std::ldexp(std::tgamma(m + 1.0), m) * std::sqrt(std::numbers::pi));
  return cur / norm;
}

// ∫ 2^{1/4} psi_p(√2 x) psi_b(x) psi_c(x) dx: pump at waist w/√2, signal and
// idler at w. The Gaussian factors combine to exp(-2x^2); x = t/√2 maps the
// integrand onto the Gauss-Hermite weight.
double triple_overlap_1d(int p, int b, int c, const GaussHermiteRule& rule) {
  const double scale = 1.0 / std::sqrt(2.0);
  double sum = 0.0;
  for (Index i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    sum += rule.weights[i] * hermite_poly_normalized(p, t) * hermite_poly_normalized(b, scale * t) *
           hermite_poly_normalized(c, scale * t);
  }
  return std::pow(2.0, 0.25) * scale * sum;
}

}  // namespace

double overlap_integral(HGIndex pump, HGIndex signal, HGIndex idler, int resolution) {
  if (resolution < kMinOverlapResolution) {
    throw InvalidArgument("overlap quadrature resolution " + std::to_string(resolution) +
                          " is below the minimum of " + std::to_string(kMinOverlapResolution));
  }
  for (const HGIndex& idx : {pump, signal, idler}) {
    if (idx.m < 0 || idx.n < 0) throw InvalidArgument("Hermite-Gaussian indices must be non-negative");
  }
  if (selection_forbidden(pump, signal, idler)) return 0.0;
  const GaussHermiteRule rule = gauss_hermite(resolution);
  return triple_overlap_1d(pump.m, signal.m, idler.m, rule) *
         triple_overlap_1d(pump.n, signal.n, idler.n, rule);
}

std::vector<HGIndex> hg_family(int order) {
  if (order < 0) throw InvalidArgument("mode order must be non-negative");
  std::vector<HGIndex> family;
  for (int m = order; m >= 0; --m) family.push_back({m, order - m});
  return family;
}

namespace {

std::vector<Process> processes_for(const std::vector<HGIndex>& pumps) {
  const std::vector<HGIndex> first_order = hg_family(1);  // HG10, HG01
  std::vector<Process> out;
  for (const HGIndex& pump : pumps) {
    for (std::size_t i = 0; i < first_order.size(); ++i) {
      for (std::size_t j = i; j < first_order.size(); ++j) {
        if (!selection_forbidden(pump, first_order[i], first_order[j])) {
          out.push_back({pump, first_order[i], first_order[j]});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Process> allowed_processes(int pump_order) {
  if (pump_order != 2) {
    throw UnsupportedConfiguration("only order-2 pumps into order-1 modes are supported, got pump order " +
                                   std::to_string(pump_order));
  }
  return processes_for(hg_family(2));
}

std::vector<Process> allowed_processes(const PumpAmplitudes& amplitudes) {
  std::vector<HGIndex> pumps;
  if (amplitudes.hg20 != 0.0) pumps.push_back(kHG20);
  if (amplitudes.hg11 != 0.0) pumps.push_back(kHG11);
  if (amplitudes.hg02 != 0.0) pumps.push_back(kHG02);
  return processes_for(pumps);
}

}  // namespace cvc
