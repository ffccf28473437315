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

// Symplectic core for Gaussian states.
//
// Phase-space vectors are laid out as (Q_1 .. Q_N, P_1 .. P_N) with
// Q = a + a†, P = -i(a - a†), so the vacuum covariance is the identity and a
// state is physical iff every symplectic eigenvalue is >= 1. The PPT value of a
// bipartition is the smallest symplectic eigenvalue after flipping the sign of
// one side's P quadratures; a value below 1 certifies entanglement.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "cvcluster/hamiltonian.hpp"

namespace cvc {

// ---------------------------------------------------------------------------
// Dense kernels, templated on the scalar type of their Eigen argument.

/// Ω = [[0, I], [-I, 0]] for `n_modes` modes.
template <typename Scalar = double>
MatrixX<Scalar> symplectic_form(Index n_modes) {
  MatrixX<Scalar> omega = MatrixX<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  omega.topRightCorner(n_modes, n_modes).setIdentity();
  omega.bottomLeftCorner(n_modes, n_modes) = -MatrixX<Scalar>::Identity(n_modes, n_modes);
  return omega;
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const Scalar scale = std::max(Scalar(1), a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// M = diag(G, -G): generator of the Heisenberg evolution S = exp(γM).
template <typename Derived>
MatrixX<typename Derived::Scalar> phase_space_generator(const Eigen::MatrixBase<Derived>& g) {
  using Scalar = typename Derived::Scalar;
  const Index n = g.rows();
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = g;
  m.bottomRightCorner(n, n) = -g;
  return m;
}

/// exp(t A) for symmetric A via its spectral decomposition.
template <typename Derived>
MatrixX<typename Derived::Scalar> expm_symmetric(const Eigen::MatrixBase<Derived>& a,
                                                 typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  if (!is_symmetric(a)) throw InvalidArgument("expm_symmetric: matrix is not symmetric");
  if (t == Scalar(0)) return MatrixX<Scalar>::Identity(a.rows(), a.cols());
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(a.eval());
  const VectorX<Scalar> scaled = (t * solver.eigenvalues().array()).exp().matrix();
  return solver.eigenvectors() * scaled.asDiagonal() * solver.eigenvectors().transpose();
}

/// max |S Ω Sᵀ - Ω|.
template <typename Derived>
typename Derived::Scalar symplectic_defect(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw InvalidArgument("symplectic matrix must be square with even dimension");
  }
  const MatrixX<Scalar> omega = symplectic_form<Scalar>(s.rows() / 2);
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

/// The N symplectic eigenvalues of a 2N x 2N positive-definite covariance,
/// ascending. They are the moduli of the eigenvalues of -iΩV, computed as the
/// singular values of the antisymmetric matrix V^{1/2} Ω V^{1/2} (which share
/// the ±iν spectrum) and taken once per ± pair.
template <typename Derived>
VectorX<typename Derived::Scalar> symplectic_eigenvalues(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() == 0) {
    throw InvalidArgument("covariance matrix must be square with positive even dimension");
  }
  if (!is_symmetric(v, Scalar(1e-9))) throw InvalidArgument("covariance matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(v.eval());
  if (solver.eigenvalues().minCoeff() <= Scalar(0)) {
    throw InvalidArgument("covariance matrix is not positive definite");
  }
  const MatrixX<Scalar> root = solver.eigenvectors() * solver.eigenvalues().cwiseSqrt().asDiagonal() *
                               solver.eigenvectors().transpose();
  const Index n = v.rows() / 2;
  const MatrixX<Scalar> b = root * symplectic_form<Scalar>(n) * root;
  VectorX<Scalar> sv = Eigen::JacobiSVD<MatrixX<Scalar>>(b).singularValues();
  std::sort(sv.data(), sv.data() + sv.size());
  VectorX<Scalar> nu(n);
  for (Index i = 0; i < n; ++i) nu[i] = sv[2 * i];
  return nu;
}

/// Local time reversal P_j -> -P_j on the listed modes (0-based positions).
/// Involutive and exact: only signs change.
template <typename Derived>
MatrixX<typename Derived::Scalar> partial_transpose(const Eigen::MatrixBase<Derived>& v,
                                                    std::span<const Index> subset) {
  using Scalar = typename Derived::Scalar;
  const Index n = v.rows() / 2;
  if (v.rows() != v.cols() || v.rows() % 2 != 0) {
    throw InvalidArgument("covariance matrix must be square with even dimension");
  }
  std::vector<Index> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || static_cast<Index>(sorted.size()) >= n ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
      sorted.back() >= n) {
    throw InvalidArgument("partial transpose needs a nonempty proper subset of distinct modes in [0, " +
                          std::to_string(n) + ")");
  }
  MatrixX<Scalar> out = v;
  for (Index j : sorted) {
    out.row(n + j) *= Scalar(-1);
    out.col(n + j) *= Scalar(-1);
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar ppt_value(const Eigen::MatrixBase<Derived>& v, std::span<const Index> subset) {
  return symplectic_eigenvalues(partial_transpose(v, subset)).minCoeff();
}

// ---------------------------------------------------------------------------
// Domain layer.

inline constexpr double kSymplecticTolerance = 1e-8;

struct QuadratureBasis {
  std::vector<ModeId> modes;

  Index size() const { return static_cast<Index>(modes.size()); }
  Index q_index(Index mode) const { return mode; }
  Index p_index(Index mode) const { return size() + mode; }
};

struct CovarianceState {
  QuadratureBasis basis;
  MatrixXd covariance;
  double gamma = 0.0;
  HamiltonianGraph source;
};

/// S = exp(γ diag(G, -G)).
MatrixXd symplectic_from_graph(const HamiltonianGraph& graph, double gamma);

/// V = S Sᵀ for vacuum input. Throws InconsistentInput when S is not
/// symplectic to within kSymplecticTolerance.
MatrixXd covariance(const MatrixXd& symplectic);

/// Vacuum evolved under the graph's Hamiltonian for interaction strength γ.
CovarianceState evolve_vacuum(const HamiltonianGraph& graph, double gamma);

/// Eigenvector of M = diag(G, -G) over the (Q.., P..) basis.
struct Supermode {
  VectorXd coefficients;
  double eigenvalue = 0.0;

  bool squeezed() const { return eigenvalue < 0.0; }
  /// Q-type supermodes live entirely in the Q block.
  bool is_q_type() const;
};

/// All 2N supermodes sorted by ascending eigenvalue. Each eigenvector u of G
/// with eigenvalue λ yields a Q-supermode (u, 0) at λ and a P-supermode (0, u)
/// at -λ; the largest-magnitude coefficient is made positive.
std::vector<Supermode> supermodes(const HamiltonianGraph& graph);

/// vᵀ V v for a unit vector v over the state's basis.
double quadrature_variance(const MatrixXd& covariance, const VectorXd& unit_vector);

/// Closed-form squeezed combinations of the rotated-pump quadripartite state as
/// orthonormal columns over (Q1..Q4, P1..P4):
///   (-Q1 cos2θ - Q2 sin2θ + Q3)/√2,  (Q1 sin2θ - Q2 cos2θ - Q4)/√2,
///   ( P1 cos2θ + P2 sin2θ + P3)/√2,  (P1 sin2θ - P2 cos2θ + P4)/√2.
/// All four scale as exp(-γ/√2) in amplitude.
Eigen::Matrix<double, 8, 4> quadripartite_squeezed_combinations(double theta);

/// ‖v - Π v‖ where Π projects onto the span of the orthonormal columns.
template <typename DerivedB, typename DerivedV>
typename DerivedV::Scalar subspace_residual(const Eigen::MatrixBase<DerivedB>& orthonormal_columns,
                                            const Eigen::MatrixBase<DerivedV>& v) {
  return (v - orthonormal_columns * (orthonormal_columns.transpose() * v)).norm();
}

}  // namespace cvc
