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

#include "symtest/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "symtest/errors.hpp"

namespace symtest {
namespace {

double max_off_diagonal(const Eigen::MatrixXd& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

// Applies the rotation annihilating a(k, l) to both sides of `a` and
// accumulates it into `v`.
void jacobi_rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, int k, int l) {
  const double apq = a(k, l);
  const double theta = (a(l, l) - a(k, k)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    const double ark = a(r, k);
    const double arl = a(r, l);
    a(r, k) = c * ark - s * arl;
    a(r, l) = s * ark + c * arl;
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const double akr = a(k, r);
    const double alr = a(l, r);
    a(k, r) = c * akr - s * alr;
    a(l, r) = s * akr + c * alr;
  }
  a(k, l) = 0.0;
  a(l, k) = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double vrk = v(r, k);
    const double vrl = v(r, l);
    v(r, k) = c * vrk - s * vrl;
    v(r, l) = s * vrk + c * vrl;
  }
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> col) {
  Eigen::Index best = 0;
  double best_mag = std::abs(col(0));
  for (Eigen::Index r = 1; r < col.size(); ++r) {
    const double mag = std::abs(col(r));
    if (mag > best_mag * (1.0 + 1e-12) && mag > best_mag) {
      best = r;
      best_mag = mag;
    }
  }
  if (col(best) < 0.0) col = -col;
}

}  // namespace

EigenDecomp eigh_desc(const SymMat& x, const JacobiOptions& opts) {
  if (!x.all_finite()) throw InputError("eigendecomposition input must be finite");
  const int p = x.dim();
  Eigen::MatrixXd a = x.dense();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(p, p);
  const double threshold = opts.rel_tol * a.norm();

  bool converged = max_off_diagonal(a) <= threshold;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (int k = 0; k < p - 1; ++k) {
      for (int l = k + 1; l < p; ++l) {
        if (std::abs(a(k, l)) > threshold) jacobi_rotate(a, v, k, l);
      }
    }
    converged = max_off_diagonal(a) <= threshold;
  }
  if (!converged) {
    throw NumericalError("Jacobi eigendecomposition did not converge in " +
                         std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenDecomp out;
  out.values.resize(p);
  out.vectors.resize(p, p);
  for (int c = 0; c < p; ++c) {
    out.values[c] = a(order[c], order[c]);
    out.vectors.col(c) = v.col(order[c]);
    canonicalize_sign(out.vectors.col(c));
  }
  return out;
}

std::vector<double> block_average(std::span<const double> lambda, const Multiplicities& mult) {
  mult.check_dim(static_cast<int>(lambda.size()));
  std::vector<double> out(lambda.size());
  for (int j = 0; j < mult.blocks(); ++j) {
    double s = 0.0;
    for (int i = mult.begin(j); i < mult.end(j); ++i) s += lambda[i];
    const double mean = s / mult.size(j);
    std::fill(out.begin() + mult.begin(j), out.begin() + mult.end(j), mean);
  }
  return out;
}

SymMat matrix_log(const SymMat& x) {
  EigenDecomp e = eigh_desc(x);
  for (double& v : e.values) {
    if (!(v > 0.0)) throw NumericalError("matrix_log requires a positive definite matrix");
    v = std::log(v);
  }
  return e.reconstruct();
}

SymMat matrix_exp(const SymMat& x) {
  EigenDecomp e = eigh_desc(x);
  for (double& v : e.values) v = std::exp(v);
  return e.reconstruct();
}

double orthogonality_error(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) return std::numeric_limits<double>::infinity();
  return (q.transpose() * q - Eigen::MatrixXd::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
}

void check_orthogonal(const Eigen::MatrixXd& q, double tol, const char* what) {
  if (q.rows() != q.cols() || q.rows() < 1) {
    throw InputError(std::string(what) + " must be a square matrix");
  }
  if (!q.allFinite() || orthogonality_error(q) > tol) {
    throw InputError(std::string(what) + " is not orthogonal (max |Q'Q - I| > " +
                     std::to_string(tol) + ")");
  }
}

Eigen::MatrixXd principal_log_orthogonal(const Eigen::MatrixXd& r) {
  if (r.rows() != r.cols()) throw InputError("principal_log_orthogonal needs a square matrix");
  if (r.determinant() < 0.0) throw NumericalError("matrix has det < 0; no real logarithm");
  const Eigen::MatrixXd sym = 0.5 * (r + r.transpose());
  const Eigen::MatrixXd skew = 0.5 * (r - r.transpose());
  EigenDecomp e = eigh_desc(SymMat::from_dense(sym));
  for (double& c : e.values) {
    if (c < -1.0 + 1e-10) {
      throw NumericalError("rotation angle too close to pi; logarithm is not unique");
    }
    const double angle = std::acos(std::clamp(c, -1.0, 1.0));
    c = angle < 1e-6 ? 1.0 + angle * angle / 6.0 : angle / std::sin(angle);
  }
  const Eigen::MatrixXd g = e.vectors * Eigen::VectorXd::Map(e.values.data(), e.values.size()).asDiagonal() *
                            e.vectors.transpose();
  const Eigen::MatrixXd l = g * skew;
  return 0.5 * (l - l.transpose());
}

}  // namespace symtest
