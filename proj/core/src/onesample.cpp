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

#include "symtest/onesample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symtest/eigen_sym.hpp"
#include "symtest/errors.hpp"
#include "symtest/pava.hpp"
#include "symtest/scatter.hpp"

namespace symtest {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> diag_of_rotated(const Eigen::MatrixXd& u0, const SymMat& y) {
  const Eigen::MatrixXd w = u0.transpose() * y.dense() * u0;
  std::vector<double> d(w.rows());
  for (Eigen::Index i = 0; i < w.rows(); ++i) d[i] = w(i, i);
  return d;
}

void check_square_dim(const Eigen::MatrixXd& u0, int p) {
  if (u0.rows() != p || u0.cols() != p) {
    throw InputError("eigenvector matrix must be " + std::to_string(p) + "x" + std::to_string(p));
  }
}

}  // namespace

Multiplicities multiplicities_of(std::span<const double> d_desc) {
  if (d_desc.empty()) throw InputError("eigenvalue list is empty");
  std::vector<int> m{1};
  for (std::size_t i = 1; i < d_desc.size(); ++i) {
    if (d_desc[i] == d_desc[i - 1]) {
      ++m.back();
    } else {
      m.push_back(1);
    }
  }
  return Multiplicities(std::move(m));
}

void validate(const ParamSet& set, int p) {
  std::visit(Overloaded{
                 [](const Unrestricted&) {},
                 [p](const Point& s) {
                   if (s.m0.dim() != p) throw InputError("M0 has the wrong dimension");
                 },
                 [p](const FixedEigvecs& s) {
                   check_square_dim(s.u0, p);
                   check_orthogonal(s.u0, 1e-8, "U0");
                 },
                 [p](const OrderedCone& s) {
                   check_square_dim(s.u0, p);
                   check_orthogonal(s.u0, 1e-8, "U0");
                 },
                 [p](const FixedEigvals& s) {
                   if (static_cast<int>(s.d0.size()) != p) throw InputError("D0 must have p entries");
                   for (std::size_t i = 0; i < s.d0.size(); ++i) {
                     if (!std::isfinite(s.d0[i])) throw InputError("D0 entries must be finite");
                     if (i > 0 && s.d0[i] > s.d0[i - 1]) throw InputError("D0 must be non-increasing");
                   }
                   s.mult.check_dim(p);
                   if (!(multiplicities_of(s.d0) == s.mult)) {
                     throw InputError("multiplicities do not match the repeated values of D0");
                   }
                 },
                 [p](const MultSet& s) { s.mult.check_dim(p); },
             },
             set);
}

bool contains(const ParamSet& set, const SymMat& m, double tol) {
  const int p = m.dim();
  const double eps = tol * std::max(1.0, m.max_abs());
  auto rotated_off_diag_ok = [&](const Eigen::MatrixXd& u0, Eigen::VectorXd* diag) {
    Eigen::MatrixXd w = u0.transpose() * m.dense() * u0;
    if (diag) *diag = w.diagonal();
    w.diagonal().setZero();
    return w.cwiseAbs().maxCoeff() <= eps;
  };
  return std::visit(
      Overloaded{
          [](const Unrestricted&) { return true; },
          [&](const Point& s) { return s.m0.dim() == p && max_abs_diff(s.m0, m) <= eps; },
          [&](const FixedEigvecs& s) { return rotated_off_diag_ok(s.u0, nullptr); },
          [&](const OrderedCone& s) {
            Eigen::VectorXd d;
            if (!rotated_off_diag_ok(s.u0, &d)) return false;
            for (int i = 0; i + 1 < p; ++i) {
              if (d(i) - d(i + 1) < -eps) return false;
            }
            return true;
          },
          [&](const FixedEigvals& s) {
            const EigenDecomp e = eigh_desc(m);
            for (int i = 0; i < p; ++i) {
              if (std::abs(e.values[i] - s.d0[i]) > eps) return false;
            }
            return true;
          },
          [&](const MultSet& s) {
            const EigenDecomp e = eigh_desc(m);
            for (int j = 0; j < s.mult.blocks(); ++j) {
              const double hi = e.values[s.mult.begin(j)];
              const double lo = e.values[s.mult.end(j) - 1];
              if (hi - lo > eps) return false;
            }
            return true;
          },
      },
      set);
}

SymMat mle_fixed_eigvecs(const Eigen::MatrixXd& u0, const SymMat& ybar) {
  return compose(u0, diag_of_rotated(u0, ybar));
}

ConeFit mle_ordered_cone(const Eigen::MatrixXd& u0, const SymMat& ybar) {
  IsotonicFit iso = pava_nonincreasing(diag_of_rotated(u0, ybar));
  ConeFit fit{compose(u0, iso.fitted), std::move(iso.fitted), iso.face_dim};
  return fit;
}

SymMat mle_fixed_eigvals(std::span<const double> d0, const Multiplicities& mult, const SymMat& ybar) {
  mult.check_dim(ybar.dim());
  if (static_cast<int>(d0.size()) != ybar.dim()) throw InputError("D0 must have p entries");
  return compose(eigh_desc(ybar).vectors, d0);
}

SymMat mle_multiplicities(const Multiplicities& mult, const SymMat& ybar) {
  const EigenDecomp e = eigh_desc(ybar);
  return compose(e.vectors, block_average(e.values, mult));
}

SymMat project(const ParamSet& set, const SymMat& ybar, std::optional<int>* face_dim) {
  validate(set, ybar.dim());
  return std::visit(Overloaded{
                        [&](const Unrestricted&) { return ybar; },
                        [&](const Point& s) { return s.m0; },
                        [&](const FixedEigvecs& s) { return mle_fixed_eigvecs(s.u0, ybar); },
                        [&](const OrderedCone& s) {
                          ConeFit fit = mle_ordered_cone(s.u0, ybar);
                          if (face_dim) *face_dim = fit.face_dim;
                          return fit.m_hat;
                        },
                        [&](const FixedEigvals& s) { return mle_fixed_eigvals(s.d0, s.mult, ybar); },
                        [&](const MultSet& s) { return mle_multiplicities(s.mult, ybar); },
                    },
                    set);
}

FitResult mle(const ParamSet& set, const SampleSet& s) {
  if (s.size() == 0) throw InputError("sample set is empty");
  const SymMat ybar = sample_mean(s);
  FitResult fit;
  fit.set = set;
  fit.m_hat = project(set, ybar, &fit.face_dim);
  fit.tau_hat = estimate_tau(s, fit.m_hat);
  fit.sigma2_hat = estimate_sigma2(s, fit.m_hat, fit.tau_hat);
  return fit;
}

double estimate_sigma2(const SampleSet& s, const SymMat& m_hat, double tau) {
  const Scatter sc = scatter_about_mean(s);
  const SymMat ybar = sample_mean(s);
  const int q = packed_size(s.dim());
  const CovParams unit{1.0, tau};
  const double s2 = (sc.frobenius - tau * sc.trace_sq) / (static_cast<double>(q) * s.size());
  return s2 + norm_sq(ybar - m_hat, unit) / q;
}

double estimate_tau(const SampleSet& s, const SymMat& m_hat) {
  const Scatter sc = scatter_about_mean(s);
  const SymMat r = sample_mean(s) - m_hat;
  const double n = s.size();
  const double frob = sc.frobenius + n * trace_product(r, r);
  const double tr_sq = sc.trace_sq + n * r.trace() * r.trace();
  return tau_from_scatter(s.dim(), frob, tr_sq);
}

EigvecUncertainty eigvec_uncertainty(const Eigen::MatrixXd& u_true, std::span<const double> d0,
                                     const SymMat& fit_m, int n, double sigma2) {
  const int p = fit_m.dim();
  check_square_dim(u_true, p);
  if (static_cast<int>(d0.size()) != p) throw InputError("D0 must have p entries");
  for (int i = 0; i + 1 < p; ++i) {
    if (!(d0[i] > d0[i + 1])) {
      throw InputError("eigenvector uncertainty needs distinct eigenvalues; the variance is "
                       "undefined for repeated ones");
    }
  }
  if (n < 1 || !(sigma2 > 0.0)) throw InputError("need n >= 1 and sigma2 > 0");

  Eigen::MatrixXd u_hat = eigh_desc(fit_m).vectors;
  Eigen::MatrixXd r = u_true.transpose() * u_hat;
  for (int j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) {
      u_hat.col(j) *= -1.0;
      r.col(j) *= -1.0;
    }
  }
  if (r.determinant() < 0.0) {
    Eigen::Index worst = 0;
    r.diagonal().minCoeff(&worst);
    r.col(worst) *= -1.0;
  }

  EigvecUncertainty out;
  out.a_hat = principal_log_orthogonal(r);
  out.predicted_var = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const double gap = d0[i] - d0[j];
      out.predicted_var(i, j) = sigma2 / (2.0 * n * gap * gap);
    }
  }
  return out;
}

}  // namespace symtest
