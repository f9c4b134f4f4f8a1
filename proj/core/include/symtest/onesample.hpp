// Copyright 2026 The symtest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "symtest/matnormal.hpp"
#include "symtest/symmat.hpp"

namespace symtest {

// One-sample hypothesis sets for the mean M.

/// All of S_p.
struct Unrestricted {};
/// The single point {M0}.
struct Point {
  SymMat m0;
};
/// {U0 D U0' : D diagonal}: known eigenvectors in any order.
struct FixedEigvecs {
  Eigen::MatrixXd u0;
};
/// {U0 D U0' : d_1 >= ... >= d_p}: known eigenvectors matched to ordered
/// eigenvalues. A closed convex cone.
struct OrderedCone {
  Eigen::MatrixXd u0;
};
/// {U D0 U' : U orthogonal}: known eigenvalues, unknown eigenvectors.
struct FixedEigvals {
  std::vector<double> d0;  // non-increasing
  Multiplicities mult;     // tie pattern of d0
};
/// Matrices whose ordered eigenvalues have the multiplicity pattern `mult`.
struct MultSet {
  Multiplicities mult;
};

using ParamSet = std::variant<Unrestricted, Point, FixedEigvecs, OrderedCone, FixedEigvals, MultSet>;

/// Checks U0 orthogonality (1e-8), D0 ordering and that `mult` matches the
/// exact ties of D0. Throws InputError.
void validate(const ParamSet& set, int p);

/// Multiplicity pattern of a non-increasing list: runs of exactly equal values.
Multiplicities multiplicities_of(std::span<const double> d_desc);

/// Whether M lies in the set, to absolute tolerance tol * max(1, |M|_max).
bool contains(const ParamSet& set, const SymMat& m, double tol = 1e-9);

struct FitResult {
  SymMat m_hat;
  double sigma2_hat = 0.0;
  double tau_hat = 0.0;
  ParamSet set;
  /// Cone fits only: number of distinct fitted eigenvalues.
  std::optional<int> face_dim;
};

/// Frobenius projection of Ybar onto the set (the covariance-free MLE of M).
/// face_dim is filled for OrderedCone.
SymMat project(const ParamSet& set, const SymMat& ybar, std::optional<int>* face_dim = nullptr);

/// MLE of (M, sigma^2, tau): M from project(), then tau from the closed-form
/// estimator and sigma^2 at that tau. Needs n >= 2.
FitResult mle(const ParamSet& set, const SampleSet& s);

/// U0 diag(U0' Ybar U0) U0'.
SymMat mle_fixed_eigvecs(const Eigen::MatrixXd& u0, const SymMat& ybar);

struct ConeFit {
  SymMat m_hat;
  std::vector<double> d_hat;
  int face_dim = 0;
};
/// U0 D U0' with diag(D) the isotonic (non-increasing) projection of
/// diag(U0' Ybar U0).
ConeFit mle_ordered_cone(const Eigen::MatrixXd& u0, const SymMat& ybar);

/// V D0 V' with V the (descending) eigenvectors of Ybar. The minimised
/// objective tr[(Ybar - M)^2] equals tr[(Lambda - D0)^2].
SymMat mle_fixed_eigvals(std::span<const double> d0, const Multiplicities& mult, const SymMat& ybar);

/// V blk(Lambda) V'.
SymMat mle_multiplicities(const Multiplicities& mult, const SymMat& ybar);

/// s^2_tau + ||Ybar - M_hat||^2_{1,tau} / q with
/// s^2_tau = (1/qn) sum ||Y_i - Ybar||^2_{1,tau}.
double estimate_sigma2(const SampleSet& s, const SymMat& m_hat, double tau);

/// Closed-form MLE of tau given M_hat:
///   -[sum ||Y_i - Ybar||^2_{1,q/p} + n ||Ybar - M_hat||^2_{1,q/p}]
///   / ((q-1) [sum tr(Y_i - Ybar)^2 + n tr(Ybar - M_hat)^2]).
/// Throws InputError when the denominator vanishes (e.g. n = 1 and M_hat = Y_1).
double estimate_tau(const SampleSet& s, const SymMat& m_hat);

struct EigvecUncertainty {
  /// log(U' U_hat) after sign alignment; antisymmetric.
  Eigen::MatrixXd a_hat;
  /// sigma^2 / (2 n (d_i - d_j)^2) off the diagonal, 0 on it.
  Eigen::MatrixXd predicted_var;
};

/// Tangent-space error of the fitted eigenvectors relative to U_true for a
/// fit from mle_fixed_eigvals. U_hat (columns of fit_m's eigenvectors) is
/// sign-aligned to make diag(U' U_hat) non-negative; if that leaves
/// det(U' U_hat) = -1 the column with the smallest diagonal entry is flipped.
/// D0 must have distinct entries.
EigvecUncertainty eigvec_uncertainty(const Eigen::MatrixXd& u_true, std::span<const double> d0,
                                     const SymMat& fit_m, int n, double sigma2);

}  // namespace symtest
