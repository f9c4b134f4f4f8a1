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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symtest/distributions.hpp"
#include "symtest/matnormal.hpp"
#include "symtest/onesample.hpp"
#include "symtest/symmat.hpp"
#include "symtest/twosample.hpp"

namespace symtest {

enum class TestId { A0, A1, A2, C2, S1, S2, S3, TwoA0, TwoS1, TwoS2, CovCheck };

/// Lower-case identifiers used in configs and reports: a0, a1, a2, c2, s1,
/// s2, s3, 2a0, 2s1, 2s2, cov-check.
std::string to_string(TestId id);
/// Inverse of to_string; InputError for unknown names.
TestId test_id_from_string(const std::string& name);
bool is_two_sample(TestId id);

/// Known (sigma^2, tau), or nullopt to estimate them from the data.
using CovChoice = std::optional<CovParams>;

struct TestResult {
  TestId test_id = TestId::A0;
  /// Likelihood-ratio statistic (or its F transform), >= 0.
  double statistic = 0.0;
  RefDist dist;
  double p_value = 1.0;
  int n = 0;
  int n1 = 0;  // two-sample only
  int n2 = 0;
  /// Covariance used in the statistic (the plug-in values when estimated).
  CovParams cov;
  bool cov_estimated = false;
  std::optional<FitResult> fit_null;
  std::optional<FitResult> fit_alt;
  std::optional<FitResult2> fit2_null;
  std::optional<FitResult2> fit2_alt;
  std::vector<std::string> warnings;
};

/// Clamp for statistics that are differences of nested minima: values
/// within 1e-9 * max(1, scale) below zero are rounding and become 0;
/// anything more negative throws ConsistencyError.
double clamp_statistic(double t, double scale, const char* what);

/// n ||Ybar - M0||^2 - n ||Ybar - MA||^2.
double llr_difference(const SymMat& ybar, const SymMat& m_null, const SymMat& m_alt, int n,
                      const CovParams& cov);
/// The expanded form 2n <Ybar, MA - M0> + n ||M0||^2 - n ||MA||^2.
double llr_expanded(const SymMat& ybar, const SymMat& m_null, const SymMat& m_alt, int n,
                    const CovParams& cov);
/// Two-sample analogue of llr_difference.
double llr_difference2(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1_null,
                       const SymMat& m2_null, const SymMat& m1_alt, const SymMat& m2_alt, int n1,
                       int n2, const CovParams& cov);

// One-sample tests. Every test takes the data and a CovChoice.

/// M = M0 vs unrestricted. Known covariance: chi^2(q), exact. Estimated:
/// (n-1) ||Ybar - M0||^2_{1,tau} / (q s^2_tau) against F(q, q(n-1)) with
/// tau and s^2 from the unrestricted fit.
TestResult test_a0(const SampleSet& s, const SymMat& m0, const CovChoice& cov);

/// M = M0 vs M in {U0 D U0'}: n ||D_hat - D0||^2, chi^2(p). M0 must be
/// diagonalised by U0 (off-diagonal of U0' M0 U0 within 1e-8).
TestResult test_a1(const SampleSet& s, const Eigen::MatrixXd& u0, const SymMat& m0, const CovChoice& cov);

/// M in {U0 D U0'} vs unrestricted: n ||Ybar - U0 D_hat U0'||^2, chi^2(q - p).
TestResult test_a2(const SampleSet& s, const Eigen::MatrixXd& u0, const CovChoice& cov);

/// M in the ordered cone at U0 vs unrestricted. Reference is the mixture
/// sum_k w_k chi^2(q - k); cone_weights[k-1] is the probability that the
/// projection lands on a face of dimension k, k = 1..p.
TestResult test_c2(const SampleSet& s, const Eigen::MatrixXd& u0, const std::vector<double>& cone_weights,
                   const CovChoice& cov);

/// M = M0 vs M in {U D0 U'}: (2n / sigma^2) [tr(Lambda D0) - tr(Ybar M0)],
/// chi^2(q - sum m(m+1)/2) asymptotically. M0 must have spectrum D0.
TestResult test_s1(const SampleSet& s, const SymMat& m0, const std::vector<double>& d0,
                   const Multiplicities& mult, const CovChoice& cov);

/// M in {U D0 U'} vs unrestricted: n ||Lambda - D0||^2, chi^2(sum m(m+1)/2).
TestResult test_s2(const SampleSet& s, const std::vector<double>& d0, const Multiplicities& mult,
                   const CovChoice& cov);

/// Multiplicity pattern vs unrestricted: (n / sigma^2) tr[(Lambda - blk Lambda)^2],
/// chi^2(sum m(m+1)/2 - k).
TestResult test_s3(const SampleSet& s, const Multiplicities& mult, const CovChoice& cov);

/// Orthogonally invariant covariance vs an unrestricted one:
/// n q log sigma2_hat - n log(1 - p tau_hat) - n log|Sigma_hat|,
/// chi^2(q(q+1)/2 - 2). Needs n > q(q+3)/2.
TestResult test_sigma_structure(const SampleSet& s);

/// Smallest n accepted by test_sigma_structure for dimension p.
int sigma_structure_min_n(int p);

// Two-sample tests; the first n1 observations are group 1.

/// M1 = M2 vs unrestricted. Known: (n1 n2 / n) ||Ybar1 - Ybar2||^2, chi^2(q).
/// Estimated: (n-2) n1 n2 ||Ybar1 - Ybar2||^2_{1,tau} / (q n^2 s12^2), F(q, q(n-2)).
TestResult test2_a0(const SampleSet& s, int n1, const CovChoice& cov);

/// Common eigenvalues (pattern mult) vs unrestricted:
/// (n1 n2 / n) ||Lambda1 - Lambda2||^2 + (n / sigma^2) tr[(Lbar - blk Lbar)^2],
/// chi^2(sum m(m+1) - k).
TestResult test2_s1(const SampleSet& s, int n1, const Multiplicities& mult, const CovChoice& cov);

/// Equal means vs common eigenvalues (pattern mult):
/// (2 n1 n2 / (n sigma^2)) [tr(Lambda1 Lambda2) - tr(Ybar1 Ybar2)]
///   + (n / sigma^2) tr[(Lambda - blk Lambda)^2 - (Lbar - blk Lbar)^2],
/// chi^2(q - sum m(m+1)/2).
TestResult test2_s2(const SampleSet& s, int n1, const Multiplicities& mult, const CovChoice& cov);

/// Everything needed to run any test from configuration.
struct TestSpec {
  TestId id = TestId::A0;
  std::optional<SymMat> m0;
  std::optional<Eigen::MatrixXd> u0;
  std::optional<std::vector<double>> d0;
  std::optional<Multiplicities> mult;
  CovChoice cov;
  std::vector<double> cone_weights;
  int n1 = 0;
};

/// Checks that the parameters required by spec.id are present and
/// consistent with dimension p; fills derivable ones (M0 = U0 D0 U0' for a1
/// and s1, mult from exact ties of D0). Throws InputError.
TestSpec resolve(TestSpec spec, int p);

TestResult run_test(const TestSpec& spec, const SampleSet& s);

}  // namespace symtest
