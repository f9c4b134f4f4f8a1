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

#include "symtest/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symtest/errors.hpp"

namespace symtest {

int dim_from_packed_size(int q) {
  const int p = static_cast<int>(std::lround((std::sqrt(8.0 * q + 1.0) - 1.0) / 2.0));
  if (q <= 0 || packed_size(p) != q) {
    throw InputError("length " + std::to_string(q) + " is not p(p+1)/2 for any p");
  }
  return p;
}

SymMat::SymMat(int p) : p_(p) {
  if (p < 1) throw InputError("matrix dimension must be >= 1");
  entries_.assign(packed_size(p), 0.0);
}

SymMat SymMat::identity(int p, double scale) {
  SymMat x(p);
  for (int i = 0; i < p; ++i) x.set(i, i, scale);
  return x;
}

SymMat SymMat::diagonal(std::span<const double> d) {
  SymMat x(static_cast<int>(d.size()));
  for (int i = 0; i < x.dim(); ++i) x.set(i, i, d[i]);
  return x;
}

SymMat SymMat::from_packed(int p, std::vector<double> upper) {
  if (p < 1 || static_cast<int>(upper.size()) != packed_size(p)) {
    throw InputError("packed triangle has " + std::to_string(upper.size()) +
                     " entries, expected " + std::to_string(packed_size(p)));
  }
  SymMat x;
  x.p_ = p;
  x.entries_ = std::move(upper);
  if (!x.all_finite()) throw InputError("matrix entries must be finite");
  return x;
}

SymMat SymMat::from_dense(const Eigen::MatrixXd& m, double sym_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw InputError("matrix must be square");
  const int p = static_cast<int>(m.rows());
  if (!m.allFinite()) throw InputError("matrix entries must be finite");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  SymMat x(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > sym_tol * scale) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
      }
      x.set(i, j, m(i, j));
    }
  }
  return x;
}

std::size_t SymMat::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after rows 0..i-1, which hold
  // p + (p-1) + ... + (p-i+1) entries.
  return static_cast<std::size_t>(i * p_ - i * (i - 1) / 2 + (j - i));
}

Eigen::MatrixXd SymMat::dense() const {
  Eigen::MatrixXd m(p_, p_);
  std::size_t k = 0;
  for (int i = 0; i < p_; ++i) {
    for (int j = i; j < p_; ++j, ++k) {
      m(i, j) = entries_[k];
      m(j, i) = entries_[k];
    }
  }
  return m;
}

Eigen::VectorXd SymMat::diagonal_entries() const {
  Eigen::VectorXd d(p_);
  for (int i = 0; i < p_; ++i) d(i) = (*this)(i, i);
  return d;
}

double SymMat::trace() const {
  double t = 0.0;
  for (int i = 0; i < p_; ++i) t += (*this)(i, i);
  return t;
}

double SymMat::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool SymMat::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

SymMat& SymMat::operator+=(const SymMat& other) {
  if (other.p_ != p_) throw InputError("dimension mismatch in matrix sum");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& other) {
  if (other.p_ != p_) throw InputError("dimension mismatch in matrix difference");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  for (double& v : entries_) v *= s;
  return *this;
}

double max_abs_diff(const SymMat& a, const SymMat& b) { return (a - b).max_abs(); }

double trace_product(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch in trace product");
  const int p = a.dim();
  double diag = 0.0;
  double off = 0.0;
  for (int i = 0; i < p; ++i) {
    diag += a(i, i) * b(i, i);
    for (int j = i + 1; j < p; ++j) off += a(i, j) * b(i, j);
  }
  return diag + 2.0 * off;
}

SymMat congruence(const Eigen::MatrixXd& q, const SymMat& x) {
  if (q.rows() != x.dim() || q.cols() != x.dim()) {
    throw InputError("dimension mismatch in congruence transform");
  }
  const Eigen::MatrixXd r = q * x.dense() * q.transpose();
  SymMat out(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    for (int j = i; j < x.dim(); ++j) out.set(i, j, 0.5 * (r(i, j) + r(j, i)));
  }
  return out;
}

SymMat compose(const Eigen::MatrixXd& u, std::span<const double> d) {
  const int p = static_cast<int>(d.size());
  if (u.rows() != p || u.cols() != p) throw InputError("dimension mismatch in U diag(d) U'");
  SymMat out(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k) s += u(i, k) * d[k] * u(j, k);
      out.set(i, j, s);
    }
  }
  return out;
}

Eigen::VectorXd vecd(const SymMat& x) {
  const int p = x.dim();
  Eigen::VectorXd v(packed_size(p));
  for (int i = 0; i < p; ++i) v(i) = x(i, i);
  int k = p;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) v(k++) = std::numbers::sqrt2 * x(i, j);
  }
  return v;
}

SymMat vecd_inv(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const int p = dim_from_packed_size(static_cast<int>(v.size()));
  SymMat x(p);
  for (int i = 0; i < p; ++i) x.set(i, i, v(i));
  int k = p;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) x.set(i, j, v(k++) / std::numbers::sqrt2);
  }
  return x;
}

CovParams CovParams::from_c(double sigma2, double c, int p) {
  return CovParams{sigma2, c / (1.0 + p * c)};
}

bool CovParams::valid(int p) const {
  return std::isfinite(sigma2) && sigma2 > 0.0 && std::isfinite(tau) && tau < 1.0 / p;
}

void CovParams::validate(int p) const {
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) {
    throw InputError("sigma2 must be a positive finite number");
  }
  if (!std::isfinite(tau) || tau >= 1.0 / p) {
    throw InputError("tau must be finite and below 1/p = " + std::to_string(1.0 / p));
  }
}

double inner(const SymMat& a, const SymMat& b, const CovParams& cov) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch in inner product");
  return (trace_product(a, b) - cov.tau * a.trace() * b.trace()) / cov.sigma2;
}

double norm_sq(const SymMat& a, const CovParams& cov) { return inner(a, a, cov); }

double norm_sq_diag(std::span<const double> d, const CovParams& cov) {
  double ss = 0.0;
  double t = 0.0;
  for (double v : d) {
    ss += v * v;
    t += v;
  }
  return (ss - cov.tau * t * t) / cov.sigma2;
}

Multiplicities::Multiplicities(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty()) throw InputError("multiplicities must have at least one block");
  cumulative_.assign(1, 0);
  for (int mi : m_) {
    if (mi < 1) throw InputError("every multiplicity must be >= 1");
    cumulative_.push_back(cumulative_.back() + mi);
  }
}

int Multiplicities::sum_block_params() const {
  int s = 0;
  for (int mi : m_) s += mi * (mi + 1) / 2;
  return s;
}

void Multiplicities::check_dim(int p) const {
  if (m_.empty() || total() != p) {
    throw InputError("multiplicities sum to " + std::to_string(total()) + ", expected p = " +
                     std::to_string(p));
  }
}

}  // namespace symtest
