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

#include <doctest.h>

#include <algorithm>

#include "cvcluster/modes.hpp"
#include "oracles.hpp"

using namespace cvc;

TEST_CASE("mode ordering is (freq, spatial, time)") {
  std::vector<ModeId> modes{{Spatial::v, 0, 0}, {Spatial::h, 1, 0}, {Spatial::h, 0, 1}, {Spatial::h, 0, 0}};
  std::sort(modes.begin(), modes.end());
  CHECK(modes[0] == ModeId{Spatial::h, 0, 0});
  CHECK(modes[1] == ModeId{Spatial::h, 0, 1});
  CHECK(modes[2] == ModeId{Spatial::v, 0, 0});
  CHECK(modes[3] == ModeId{Spatial::h, 1, 0});
  CHECK(to_string(ModeId{Spatial::v, -1, 2}) == "v-1@2");
  CHECK(to_string(ModeId{Spatial::h, 3, 0}) == "h3");
}

TEST_CASE("HG orders") {
  CHECK(kHG10.order() == 1);
  CHECK(kHG11.order() == 2);
  CHECK(hg_family(2) == std::vector<HGIndex>{kHG20, kHG11, kHG02});
  CHECK(hg_family(1) == std::vector<HGIndex>{kHG10, kHG01});
}

TEST_CASE("pump amplitudes are normalized and π periodic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double t = angle(rng);
    const PumpAmplitudes p = pump_amplitudes(t);
    CHECK(p.hg20 * p.hg20 + p.hg11 * p.hg11 + p.hg02 * p.hg02 == doctest::Approx(1.0).epsilon(1e-12));
    const PumpAmplitudes s = pump_amplitudes(t + oracle::kPi);
    CHECK(std::abs(p.hg20 - s.hg20) < 1e-12);
    CHECK(std::abs(p.hg11 - s.hg11) < 1e-12);
    CHECK(std::abs(p.hg02 - s.hg02) < 1e-12);
  }
}

TEST_CASE("double angle flushes rounding residue at the endpoints") {
  CHECK(double_angle(oracle::kPi / 4).cos2 == 0.0);
  CHECK(double_angle(oracle::kPi / 4).sin2 == 1.0);
  CHECK(double_angle(0.0).sin2 == 0.0);
  CHECK(double_angle(oracle::kPi / 2).sin2 == 0.0);
}

TEST_CASE("gauss-hermite weights integrate low moments") {
  const GaussHermiteRule rule = gauss_hermite(20);
  CHECK(rule.weights.sum() == doctest::Approx(std::sqrt(oracle::kPi)).epsilon(1e-13));
  const double second = (rule.weights.array() * rule.nodes.array().square()).sum();
  CHECK(second == doctest::Approx(std::sqrt(oracle::kPi) / 2).epsilon(1e-13));
}

TEST_CASE("overlap integrals match trapezoid quadrature") {
  for (HGIndex pump : hg_family(2)) {
    for (HGIndex s : hg_family(1)) {
      for (HGIndex i : hg_family(1)) {
        const double expected = oracle::trapezoid_overlap(pump, s, i);
        const double got = overlap_integral(pump, s, i);
        CAPTURE(to_string(pump));
        CAPTURE(to_string(s));
        CAPTURE(to_string(i));
        CHECK(std::abs(got - expected) < 1e-12);
        CHECK(got == overlap_integral(pump, i, s));
        CHECK((got == 0.0) == selection_forbidden(pump, s, i));
        if (selection_forbidden(pump, s, i)) CHECK(std::abs(expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("orthogonality removes the cross-axis second-order processes") {
  CHECK(!parity_forbidden(kHG20, kHG01, kHG01));
  CHECK(orthogonality_forbidden(kHG20, kHG01, kHG01));
  CHECK(orthogonality_forbidden(kHG02, kHG10, kHG10));
  CHECK(!selection_forbidden(kHG11, kHG10, kHG01));
}

TEST_CASE("overlap argument validation") {
  CHECK_THROWS_AS(overlap_integral(kHG20, kHG10, kHG10, 16), InvalidArgument);
  CHECK_THROWS_AS(overlap_integral(HGIndex{-1, 0}, kHG10, kHG10), InvalidArgument);
  CHECK(overlap_integral(kHG20, kHG10, kHG10, 32) == doctest::Approx(overlap_integral(kHG20, kHG10, kHG10, 96)));
}

TEST_CASE("allowed processes of the order-2 family") {
  const std::vector<Process> all = allowed_processes(2);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == Process{kHG20, kHG10, kHG10});
  CHECK(all[1] == Process{kHG11, kHG10, kHG01});
  CHECK(all[2] == Process{kHG02, kHG01, kHG01});
  CHECK_THROWS_AS(allowed_processes(3), UnsupportedConfiguration);
  CHECK(allowed_processes(PumpAmplitudes{}).empty());
  CHECK(allowed_processes(pump_amplitudes(0.0)).size() == 2);
  CHECK(allowed_processes(pump_amplitudes(oracle::kPi / 4)).size() == 1);
}

TEST_CASE("pump schedule lookup") {
  PumpComponent c{1, 0.3};
  CHECK(c.theta_at(17) == 0.3);
  c.schedule = {{0, 0.1}, {1, 0.2}};
  CHECK(c.theta_at(1) == 0.2);
  CHECK_THROWS_AS(c.theta_at(2), InvalidArgument);
}
