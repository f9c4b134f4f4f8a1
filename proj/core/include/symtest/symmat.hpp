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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symtest {

/// Number of free entries of a p x p symmetric matrix, p(p+1)/2.
constexpr int packed_size(int p) { return p * (p + 1) / 2; }

/// Inverse of packed_size; throws InputError when q is not triangular.
int dim_from_packed_size(int q);

/// A real symmetric p x p matrix.
///
/// Only the upper triangle is stored, row by row
/// (X11, X12, ..., X1p, X22, ..., Xpp), so symmetry holds by construction.
/// Entries are raw matrix entries; the sqrt(2) scaling of the vecd embedding
/// is applied only by vecd().
class SymMat {
 public:
  SymMat() = default;
  /// Zero matrix of dimension p (p >= 1).
  explicit SymMat(int p);

  static SymMat identity(int p, double scale = 1.0);
  static SymMat diagonal(std::span<const double> d);
  /// Takes ownership of a packed upper triangle; all values must be finite.
  static SymMat from_packed(int p, std::vector<double> upper);
  /// Reads the upper triangle of a square matrix. The lower triangle must
  /// agree with the upper one to `sym_tol` (relative to the largest entry).
  static SymMat from_dense(const Eigen::MatrixXd& x, double sym_tol = 1e-10);

  int dim() const { return p_; }
  std::span<const double> packed() const { return entries_; }

  double operator()(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, double value) { entries_[index(i, j)] = value; }

  Eigen::MatrixXd dense() const;
  Eigen::VectorXd diagonal_entries() const;
  double trace() const;
  double max_abs() const;
  bool all_finite() const;

  SymMat& operator+=(const SymMat& other);
  SymMat& operator-=(const SymMat& other);
  SymMat& operator*=(double s);

  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(SymMat a, double s) { return a *= s; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }
  friend bool operator==(const SymMat&, const SymMat&) = default;

 private:
  std::size_t index(int i, int j) const;

  int p_ = 0;
  std::vector<double> entries_;
};

/// Largest absolute entry of a - b.
double max_abs_diff(const SymMat& a, const SymMat& b);

/// tr(AB) evaluated from the packed triangles.
double trace_product(const SymMat& a, const SymMat& b);

/// Q X Q' for an arbitrary square Q (symmetrised from the upper triangle).
SymMat congruence(const Eigen::MatrixXd& q, const SymMat& x);

/// U diag(d) U'.
SymMat compose(const Eigen::MatrixXd& u, std::span<const double> d);

/// vecd(X) = (diag(X)', sqrt(2) offdiag(X)')' with offdiag in row-major
/// upper-triangle order. ||vecd(X)||^2 = tr(X^2).
Eigen::VectorXd vecd(const SymMat& x);
SymMat vecd_inv(const Eigen::Ref<const Eigen::VectorXd>& v);

/// Parameters (sigma^2, tau) of the orthogonally invariant covariance.
struct CovParams {
  double sigma2 = 1.0;
  double tau = 0.0;

  /// c = tau / (1 - p tau), the coefficient of 1 1' in cov(diag Z)/sigma^2.
  double c(int p) const { return tau / (1.0 - p * tau); }
  /// Inverse map tau = c / (1 + p c).
  static CovParams from_c(double sigma2, double c, int p);
  /// Throws InputError unless sigma2 > 0 (finite) and tau < 1/p.
  void validate(int p) const;
  bool valid(int p) const;
};

/// [tr(AB) - tau tr(A) tr(B)] / sigma^2.
double inner(const SymMat& a, const SymMat& b, const CovParams& cov);

/// inner(A, A, cov). A pseudo-norm: tau >= 1/p is accepted (the tau
/// estimator evaluates it at tau = q/p) and the result can then be negative.
double norm_sq(const SymMat& a, const CovParams& cov);

/// Same quadratic form for a diagonal matrix given by its entries.
double norm_sq_diag(std::span<const double> d, const CovParams& cov);

/// Ordered multiplicity pattern m_1, ..., m_k of the distinct eigenvalues,
/// largest eigenvalue block first.
class Multiplicities {
 public:
  Multiplicities() = default;
  explicit Multiplicities(std::vector<int> m);

  static Multiplicities distinct(int p) { return Multiplicities(std::vector<int>(p, 1)); }
  static Multiplicities isotropic(int p) { return Multiplicities({p}); }

  int blocks() const { return static_cast<int>(m_.size()); }
  int total() const { return cumulative_.back(); }
  int size(int j) const { return m_[j]; }
  /// e_0 = 0, e_j = m_1 + ... + m_j; block j covers [e_j, e_{j+1}).
  int begin(int j) const { return cumulative_[j]; }
  int end(int j) const { return cumulative_[j + 1]; }
  const std::vector<int>& sizes() const { return m_; }

  /// sum_i m_i (m_i + 1) / 2
  int sum_block_params() const;

  /// Throws InputError unless total() == p.
  void check_dim(int p) const;

  friend bool operator==(const Multiplicities&, const Multiplicities&) = default;

 private:
  std::vector<int> m_;
  std::vector<int> cumulative_{0};
};

}  // namespace symtest
