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

#include "symtest/twosample.hpp"

#include <algorithm>
#include <cmath>

#include "symtest/eigen_sym.hpp"
#include "symtest/errors.hpp"
#include "symtest/scatter.hpp"

namespace symtest {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool block_constant(std::span<const double> values, const Multiplicities& mult, double eps) {
  for (int j = 0; j < mult.blocks(); ++j) {
    if (values[mult.begin(j)] - values[mult.end(j) - 1] > eps) return false;
  }
  return true;
}

void check_sizes(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InputError("both groups need at least one observation");
}

}  // namespace

void validate(const ParamSet2& set, int p) {
  std::visit(Overloaded{
                 [](const Unrestricted2&) {},
                 [p](const EqualMeans& s) {
                   if (s.mult) s.mult->check_dim(p);
                 },
                 [p](const CommonEigvals& s) { s.mult.check_dim(p); },
             },
             set);
}

bool contains(const ParamSet2& set, const SymMat& m1, const SymMat& m2, double tol) {
  if (m1.dim() != m2.dim()) return false;
  const double eps = tol * std::max({1.0, m1.max_abs(), m2.max_abs()});
  return std::visit(Overloaded{
                        [](const Unrestricted2&) { return true; },
                        [&](const EqualMeans& s) {
                          if (max_abs_diff(m1, m2) > eps) return false;
                          return !s.mult || block_constant(eigh_desc(m1).values, *s.mult, eps);
                        },
                        [&](const CommonEigvals& s) {
                          const EigenDecomp e1 = eigh_desc(m1);
                          const EigenDecomp e2 = eigh_desc(m2);
                          for (int i = 0; i < m1.dim(); ++i) {
                            if (std::abs(e1.values[i] - e2.values[i]) > eps) return false;
                          }
                          return block_constant(e1.values, s.mult, eps);
                        },
                    },
                    set);
}

std::pair<SymMat, SymMat> mle_common_eigvals(const Multiplicities& mult, const SymMat& ybar1,
                                             const SymMat& ybar2, int n1, int n2) {
  check_sizes(n1, n2);
  mult.check_dim(ybar1.dim());
  const EigenDecomp e1 = eigh_desc(ybar1);
  const EigenDecomp e2 = eigh_desc(ybar2);
  const double n = n1 + n2;
  std::vector<double> pooled(e1.values.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    pooled[i] = (n1 * e1.values[i] + n2 * e2.values[i]) / n;
  }
  const std::vector<double> d = block_average(pooled, mult);
  return {compose(e1.vectors, d), compose(e2.vectors, d)};
}

std::pair<SymMat, SymMat> project2(const ParamSet2& set, const SymMat& ybar1, const SymMat& ybar2,
                                   int n1, int n2) {
  check_sizes(n1, n2);
  if (ybar1.dim() != ybar2.dim()) throw InputError("group means differ in dimension");
  validate(set, ybar1.dim());
  return std::visit(Overloaded{
                        [&](const Unrestricted2&) { return std::pair{ybar1, ybar2}; },
                        [&](const EqualMeans& s) {
                          SymMat avg = (ybar1 * static_cast<double>(n1) + ybar2 * static_cast<double>(n2)) *
                                       (1.0 / (n1 + n2));
                          if (s.mult) {
                            const EigenDecomp e = eigh_desc(avg);
                            avg = compose(e.vectors, block_average(e.values, *s.mult));
                          }
                          return std::pair{avg, avg};
                        },
                        [&](const CommonEigvals& s) {
                          return mle_common_eigvals(s.mult, ybar1, ybar2, n1, n2);
                        },
                    },
                    set);
}

FitResult2 mle2(const ParamSet2& set, const SampleSet& s, int n1) {
  const GroupMeans g = group_means(s, n1);
  FitResult2 fit;
  fit.set = set;
  std::tie(fit.m1_hat, fit.m2_hat) = project2(set, g.mean1, g.mean2, n1, s.size() - n1);
  fit.tau_hat = pooled_tau(s, n1, fit.m1_hat, fit.m2_hat);
  fit.sigma2_hat = pooled_sigma2(s, n1, fit.m1_hat, fit.m2_hat, fit.tau_hat);
  return fit;
}

double pooled_sigma2(const SampleSet& s, int n1, const SymMat& m1_hat, const SymMat& m2_hat,
                     double tau) {
  const GroupMeans g = group_means(s, n1);
  const int n = s.size();
  const Scatter a = scatter_about(s, 0, n1, g.mean1);
  const Scatter b = scatter_about(s, n1, n, g.mean2);
  const double qn = static_cast<double>(packed_size(s.dim())) * n;
  const CovParams unit{1.0, tau};
  const double within = (a.frobenius + b.frobenius) - tau * (a.trace_sq + b.trace_sq);
  const double between = n1 * norm_sq(g.mean1 - m1_hat, unit) + (n - n1) * norm_sq(g.mean2 - m2_hat, unit);
  return (within + between) / qn;
}

double pooled_tau(const SampleSet& s, int n1, const SymMat& m1_hat, const SymMat& m2_hat) {
  const GroupMeans g = group_means(s, n1);
  const int n = s.size();
  const Scatter a = scatter_about(s, 0, n1, g.mean1);
  const Scatter b = scatter_about(s, n1, n, g.mean2);
  const SymMat r1 = g.mean1 - m1_hat;
  const SymMat r2 = g.mean2 - m2_hat;
  const double n2 = n - n1;
  const double frob = a.frobenius + b.frobenius + n1 * trace_product(r1, r1) + n2 * trace_product(r2, r2);
  const double tr_sq =
      a.trace_sq + b.trace_sq + n1 * r1.trace() * r1.trace() + n2 * r2.trace() * r2.trace();
  return tau_from_scatter(s.dim(), frob, tr_sq);
}

double objective2(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1, const SymMat& m2,
                  int n1, int n2, const CovParams& cov) {
  return n1 * norm_sq(ybar1 - m1, cov) + n2 * norm_sq(ybar2 - m2, cov);
}

double objective2_split(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1, const SymMat& m2,
                        int n1, int n2, const CovParams& cov) {
  const double n = n1 + n2;
  const SymMat avg_y = (ybar1 * static_cast<double>(n1) + ybar2 * static_cast<double>(n2)) * (1.0 / n);
  const SymMat avg_m = (m1 * static_cast<double>(n1) + m2 * static_cast<double>(n2)) * (1.0 / n);
  const SymMat diff = (ybar1 - ybar2) - (m1 - m2);
  return n * norm_sq(avg_y - avg_m, cov) + (n1 * n2 / n) * norm_sq(diff, cov);
}

}  // namespace symtest
