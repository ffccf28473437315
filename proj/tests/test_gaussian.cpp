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

#include <array>

#include "cvcluster/gaussian.hpp"
#include "oracles.hpp"

using namespace cvc;

namespace {

/// Random symplectic matrix exp(Ω H) for a random symmetric H.
MatrixXd random_symplectic(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 0.3);
  MatrixXd h(2 * n, 2 * n);
  for (Index i = 0; i < h.size(); ++i) h.data()[i] = gauss(rng);
  h = 0.5 * (h + h.transpose()).eval();
  return oracle::taylor_expm(symplectic_form(n) * h, 1.0, 60);
}

}  // namespace

TEST_CASE("symplectic form") {
  const MatrixXd omega = symplectic_form(3);
  CHECK((omega * omega + MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((omega + omega.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("expm matches the series oracle") {
  for (double theta : {0.0, 0.3, oracle::kPi / 8}) {
    const MatrixXd m = phase_space_generator(quadripartite_graph(theta).adjacency);
    for (double gamma : {0.05, 0.1, 0.3, 0.5}) {
      const MatrixXd s = expm_symmetric(m, gamma);
      CHECK((s - oracle::taylor_expm(m, gamma)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(symplectic_defect(s) < 1e-10);
    }
  }
}

TEST_CASE("expm works in long double") {
  using MatL = MatrixX<long double>;
  MatL a(2, 2);
  a << 0.0L, 1.0L, 1.0L, 0.0L;
  const MatL e = expm_symmetric(a, 0.5L);
  CHECK(static_cast<double>(e(0, 0)) == doctest::Approx(std::cosh(0.5)));
  CHECK(static_cast<double>(e(0, 1)) == doctest::Approx(std::sinh(0.5)));
}

TEST_CASE("symplectic eigenvalues of a thermal state under random symplectics") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> nu_dist(1.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3;
    VectorXd nu(n);
    for (Index i = 0; i < n; ++i) nu[i] = nu_dist(rng);
    VectorXd diag(2 * n);
    diag << nu, nu;
    const MatrixXd s = random_symplectic(n, rng);
    REQUIRE(symplectic_defect(s) < 1e-10);
    const MatrixXd v = s * diag.asDiagonal() * s.transpose();
    std::sort(nu.data(), nu.data() + n);
    CHECK((symplectic_eigenvalues(v) - nu).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("vacuum fixtures") {
  const MatrixXd v = MatrixXd::Identity(8, 8);
  CHECK(symplectic_eigenvalues(v) == VectorXd::Ones(4));
  const std::array<Index, 2> side{0, 2};
  CHECK(partial_transpose(v, side) == v);
  CHECK(ppt_value(v, side) == 1.0);
  const CovarianceState state = evolve_vacuum(quadripartite_graph(0.4), 0.0);
  CHECK(state.covariance == MatrixXd::Identity(8, 8));
}

TEST_CASE("partial transpose is an exact involution") {
  const MatrixXd v = evolve_vacuum(quadripartite_graph(0.3), 0.2).covariance;
  const std::array<Index, 2> side{1, 3};
  const MatrixXd once = partial_transpose(v, side);
  CHECK(once != v);
  CHECK(partial_transpose(once, side) == v);
}

TEST_CASE("partial transpose rejects bad subsets") {
  const MatrixXd v = MatrixXd::Identity(8, 8);
  CHECK_THROWS_AS(partial_transpose(v, std::span<const Index>{}), InvalidArgument);
  const std::array<Index, 4> all{0, 1, 2, 3};
  CHECK_THROWS_AS(partial_transpose(v, all), InvalidArgument);
  const std::array<Index, 2> dup{1, 1};
  CHECK_THROWS_AS(partial_transpose(v, dup), InvalidArgument);
  const std::array<Index, 1> out{4};
  CHECK_THROWS_AS(partial_transpose(v, out), InvalidArgument);
}

TEST_CASE("generated states are pure and physical") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, oracle::kPi / 4);
  for (int i = 0; i < 20; ++i) {
    const MatrixXd v = evolve_vacuum(quadripartite_graph(angle(rng)), 0.4).covariance;
    CHECK((symplectic_eigenvalues(v).array() - 1.0).abs().maxCoeff() < 1e-9);
    CHECK(v.determinant() >= 1.0 - 1e-9);
  }
}

TEST_CASE("supermode squeezing law") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, oracle::kPi);
  for (int i = 0; i < 10; ++i) {
    const HamiltonianGraph g = quadripartite_graph(angle(rng));
    const double gamma = 0.2;
    const MatrixXd v = evolve_vacuum(g, gamma).covariance;
    const std::vector<Supermode> modes = supermodes(g);
    REQUIRE(modes.size() == 8);
    for (const Supermode& m : modes) {
      CHECK(quadrature_variance(v, m.coefficients) == doctest::Approx(std::exp(2 * gamma * m.eigenvalue)).epsilon(1e-9));
      CHECK(m.squeezed() == (m.eigenvalue < 0));
    }
    for (std::size_t a = 0; a < modes.size(); ++a) {
      for (std::size_t b = a + 1; b < modes.size(); ++b) {
        CHECK(std::abs(modes[a].coefficients.dot(modes[b].coefficients)) < 1e-12);
      }
    }
  }
}

TEST_CASE("squeezed supermodes span the closed-form combinations") {
  for (double theta : {0.0, oracle::kPi / 8, 0.3, oracle::kPi / 4}) {
    const HamiltonianGraph g = quadripartite_graph(theta);
    const auto closed = quadripartite_squeezed_combinations(theta);
    const MatrixXd v = oracle::taylor_expm(phase_space_generator(g.adjacency), 0.1);
    const MatrixXd cov = v * v.transpose();
    for (Index c = 0; c < 4; ++c) {
      CHECK(quadrature_variance(cov, closed.col(c)) == doctest::Approx(std::exp(-std::sqrt(2.0) * 0.1)).epsilon(1e-10));
    }
    for (const Supermode& m : supermodes(g)) {
      if (m.squeezed()) CHECK(subspace_residual(closed, m.coefficients) < 1e-9);
    }
  }
}

TEST_CASE("θ=0 squeezed combinations") {
  const auto closed = quadripartite_squeezed_combinations(0.0);
  const double s = 1.0 / std::sqrt(2.0);
  VectorXd q13 = VectorXd::Zero(8);
  q13[0] = -s;
  q13[2] = s;
  VectorXd p13 = VectorXd::Zero(8);
  p13[4] = s;
  p13[6] = s;
  CHECK(subspace_residual(closed, q13) < 1e-12);
  CHECK(subspace_residual(closed, p13) < 1e-12);
}

TEST_CASE("covariance rejects non-symplectic input") {
  MatrixXd s = MatrixXd::Identity(4, 4);
  s(0, 0) = 2.0;
  CHECK_THROWS_AS(covariance(s), InconsistentInput);
  CHECK_THROWS_AS(evolve_vacuum(quadripartite_graph(0.1), -1.0), InvalidArgument);
}
