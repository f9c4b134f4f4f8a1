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
#include <utility>
#include <variant>

#include "symtest/matnormal.hpp"
#include "symtest/symmat.hpp"

namespace symtest {

// Two-sample hypothesis sets for the pair (M1, M2). The data convention
// throughout: the first n1 observations of a SampleSet form group 1.

/// All of S_p x S_p.
struct Unrestricted2 {};
/// {(M, M)}. With `mult` set, M is further restricted to the multiplicity
/// pattern (the null of the common-eigenvector test).
struct EqualMeans {
  std::optional<Multiplicities> mult;
};
/// {(U1 D U1', U2 D U2')}: common eigenvalues with multiplicity pattern
/// `mult`, unrelated eigenvectors.
struct CommonEigvals {
  Multiplicities mult;
};

using ParamSet2 = std::variant<Unrestricted2, EqualMeans, CommonEigvals>;

void validate(const ParamSet2& set, int p);

/// Membership to tol * max(1, |M1|_max, |M2|_max).
bool contains(const ParamSet2& set, const SymMat& m1, const SymMat& m2, double tol = 1e-9);

struct FitResult2 {
  SymMat m1_hat;
  SymMat m2_hat;
  double sigma2_hat = 0.0;
  double tau_hat = 0.0;
  ParamSet2 set;
};

/// Minimiser of n1 tr[(Ybar1 - M1)^2] + n2 tr[(Ybar2 - M2)^2] over the set.
std::pair<SymMat, SymMat> project2(const ParamSet2& set, const SymMat& ybar1, const SymMat& ybar2,
                                   int n1, int n2);

/// Fit of (M1, M2, sigma^2, tau). Needs 1 <= n1 < n.
FitResult2 mle2(const ParamSet2& set, const SampleSet& s, int n1);

/// V_i blk(Lambda_bar) V_i' with Lambda_bar = (n1 Lambda_1 + n2 Lambda_2) / n
/// and (V_i, Lambda_i) the descending eigendecomposition of Ybar_i.
std::pair<SymMat, SymMat> mle_common_eigvals(const Multiplicities& mult, const SymMat& ybar1,
                                             const SymMat& ybar2, int n1, int n2);

/// s12^2 + (n1 ||Ybar1 - M1||^2_{1,tau} + n2 ||Ybar2 - M2||^2_{1,tau}) / (qn),
/// s12^2 the pooled within-group variance at tau.
double pooled_sigma2(const SampleSet& s, int n1, const SymMat& m1_hat, const SymMat& m2_hat,
                     double tau);

/// Closed-form tau given the fitted means. Residuals are centred at their
/// own group mean, and both between-group trace terms carry their own group
/// size.
double pooled_tau(const SampleSet& s, int n1, const SymMat& m1_hat, const SymMat& m2_hat);

/// n1 ||Ybar1 - M1||^2 + n2 ||Ybar2 - M2||^2 under `cov`.
double objective2(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1, const SymMat& m2,
                  int n1, int n2, const CovParams& cov);

/// The same objective as n ||avg(Ybar) - avg(M)||^2 + (n1 n2 / n) ||D(Ybar) - D(M)||^2,
/// with avg the size-weighted mean and D the group difference.
double objective2_split(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1, const SymMat& m2,
                        int n1, int n2, const CovParams& cov);

}  // namespace symtest
