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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symtest/symmat.hpp"

namespace symtest {

/// X = V diag(lambda) V' with lambda non-increasing and V orthogonal.
struct EigenDecomp {
  Eigen::MatrixXd vectors;
  std::vector<double> values;

  SymMat reconstruct() const { return compose(vectors, values); }
};

struct JacobiOptions {
  /// Converged once every off-diagonal magnitude is <= rel_tol * ||X||_F.
  double rel_tol = 1e-13;
  int max_sweeps = 50;
};

/// Symmetric eigendecomposition by cyclic Jacobi sweeps.
///
/// Eigenvalues are sorted in non-increasing order with a stable sort, so
/// exact ties keep the order Jacobi produced them in (for a multiple of the
/// identity, V = I). Each eigenvector is then flipped so that its
/// largest-magnitude entry is positive; magnitudes equal to within 1e-12
/// relative count as tied and the smallest row index wins.
///
/// Throws NumericalError if the sweeps do not converge.
EigenDecomp eigh_desc(const SymMat& x, const JacobiOptions& opts = {});

/// Replaces the entries of each multiplicity block by the block mean.
/// `lambda` must have exactly mult.total() entries.
std::vector<double> block_average(std::span<const double> lambda, const Multiplicities& mult);

/// Matrix logarithm via the eigendecomposition; NumericalError unless every
/// eigenvalue is strictly positive.
SymMat matrix_log(const SymMat& x);
SymMat matrix_exp(const SymMat& x);

/// max |Q'Q - I|.
double orthogonality_error(const Eigen::MatrixXd& q);

/// Throws InputError unless q is square with orthogonality_error <= tol.
void check_orthogonal(const Eigen::MatrixXd& q, double tol, const char* what);

/// Principal logarithm of a special orthogonal matrix, returned as an
/// antisymmetric matrix. With C = (R + R')/2 and K = (R - R')/2, which
/// commute, log R = g(C) K where g(cos t) = t / sin t on each rotation
/// plane. Throws NumericalError when a rotation angle is too close to pi for
/// the logarithm to be unique, or when det R < 0.
Eigen::MatrixXd principal_log_orthogonal(const Eigen::MatrixXd& r);

}  // namespace symtest
