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

#include "cvcluster/gaussian.hpp"

#include <sstream>

namespace cvc {

MatrixXd symplectic_from_graph(const HamiltonianGraph& graph, double gamma) {
  if (!is_symmetric(graph.adjacency)) throw InvalidArgument("Hamiltonian graph adjacency is not symmetric");
  if (!(gamma >= 0.0)) throw InvalidArgument("interaction strength gamma must be >= 0");
  return expm_symmetric(phase_space_generator(graph.adjacency), gamma);
}

MatrixXd covariance(const MatrixXd& symplectic) {
  const double defect = symplectic_defect(symplectic);
  if (!(defect <= kSymplecticTolerance)) {
    std::ostringstream msg;
    msg << "symplectic defect " << defect << " exceeds " << kSymplecticTolerance;
    throw InconsistentInput(msg.str());
  }
  MatrixXd v = symplectic * symplectic.transpose();
  // S S^T is symmetric mathematically; remove rounding asymmetry.
  return 0.5 * (v + v.transpose());
}

CovarianceState evolve_vacuum(const HamiltonianGraph& graph, double gamma) {
  CovarianceState state;
  state.basis.modes = graph.modes;
  state.covariance = covariance(symplectic_from_graph(graph, gamma));
  state.gamma = gamma;
  state.source = graph;
  return state;
}

bool Supermode::is_q_type() const {
  const Index n = coefficients.size() / 2;
  return coefficients.tail(n).cwiseAbs().maxCoeff() == 0.0;
}

namespace {

void fix_sign(VectorXd& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= peak - 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

std::vector<Supermode> supermodes(const HamiltonianGraph& graph) {
  if (!is_symmetric(graph.adjacency)) throw InvalidArgument("Hamiltonian graph adjacency is not symmetric");
  const Index n = graph.size();
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(graph.adjacency);
  std::vector<Supermode> out;
  out.reserve(2 * n);
  for (Index i = 0; i < n; ++i) {
    VectorXd u = solver.eigenvectors().col(i).normalized();
    fix_sign(u);
    Supermode q{VectorXd::Zero(2 * n), solver.eigenvalues()[i]};
    q.coefficients.head(n) = u;
    Supermode p{VectorXd::Zero(2 * n), -solver.eigenvalues()[i]};
    p.coefficients.tail(n) = u;
    out.push_back(std::move(q));
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Supermode& a, const Supermode& b) { return a.eigenvalue < b.eigenvalue; });
  return out;
}

double quadrature_variance(const MatrixXd& covariance, const VectorXd& unit_vector) {
  if (covariance.rows() != unit_vector.size()) {
    throw InvalidArgument("quadrature vector does not match the covariance dimension");
  }
  return unit_vector.dot(covariance * unit_vector);
}

Eigen::Matrix<double, 8, 4> quadripartite_squeezed_combinations(double theta) {
  const DoubleAngle t = double_angle(theta);
  Eigen::Matrix<double, 8, 4> basis = Eigen::Matrix<double, 8, 4>::Zero();
  basis.col(0).head<4>() << -t.cos2, -t.sin2, 1.0, 0.0;
  basis.col(1).head<4>() << t.sin2, -t.cos2, 0.0, -1.0;
  basis.col(2).tail<4>() << t.cos2, t.sin2, 1.0, 0.0;
  basis.col(3).tail<4>() << t.sin2, -t.cos2, 0.0, 1.0;
  basis.colwise().normalize();
  return basis;
}

}  // namespace cvc
