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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symtest/distributions.hpp"
#include "symtest/lrt.hpp"
#include "symtest/symmat.hpp"

namespace symtest {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once; callers write results to slot i, which keeps the
/// output independent of the thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// Default worker count: hardware concurrency, at least 1.
int default_threads();

/// Truth used to simulate data: N(mean, cov) for one-sample tests; group 2
/// uses mean2 (defaulting to mean) for two-sample tests.
struct GeneratorSpec {
  SymMat mean;
  std::optional<SymMat> mean2;
  CovParams cov;
};

struct CalibrationOptions {
  int n = 50;   // total sample size
  int n1 = 0;   // group-1 size for two-sample tests; 0 means n / 2
  int reps = 5000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct CalibrationReport {
  TestId test_id = TestId::A0;
  int reps = 0;
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  std::uint64_t seed = 0;
  RefDist dist;
  static constexpr std::array<double, 4> kProbs{0.5, 0.9, 0.95, 0.99};
  std::array<double, 4> empirical_quantiles{};
  std::array<double, 4> theoretical_quantiles{};
  double ks = 0.0;
  /// Fraction of replicates with p-value < 0.05.
  double rejection_rate = 0.0;
  /// Statistic of each replicate, in replicate order.
  std::vector<double> statistics;
};

/// Whether the generator's truth lies in the null set of the test (to 1e-9).
bool truth_in_null(const TestSpec& spec, const GeneratorSpec& gen);

/// Simulates `reps` data sets from `gen`, runs the test on each and compares
/// the statistics with the declared reference distribution. Replicate r
/// draws from seed derive_seed(opts.seed, r). Throws InputError when the
/// truth is outside the null set or reps < 1000.
CalibrationReport calibrate_null(const TestSpec& spec, const GeneratorSpec& gen, const CalibrationOptions& opts);

/// (theoretical, empirical) quantile pairs at probabilities k / (points + 1).
std::vector<std::pair<double, double>> qq_points(const CalibrationReport& report, int points = 99);

/// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::span<const double> sorted, double prob);

struct ConeWeights {
  std::vector<double> d_true;
  /// weights[k-1]: fraction of replicates whose projection has k distinct values.
  std::vector<double> weights;
  std::vector<long> counts;
  int reps = 0;
};

/// Draws y ~ N(d_true, I_p), projects onto {d_1 >= ... >= d_p} with PAVA and
/// tallies the face dimension.
ConeWeights estimate_cone_weights(std::span<const double> d_true, int reps, std::uint64_t seed, int threads = 1);

/// Cone weights for a truth with multiplicity pattern `mult`: blocks are
/// placed 1e3 apart, so only within-block ties matter.
ConeWeights cone_weights_for_pattern(const Multiplicities& mult, int reps, std::uint64_t seed, int threads = 1);

struct ConeBoundaryLaw {
  int n = 0;
  int reps = 0;
  /// face_mass[k-1]: fraction of fits with k distinct eigenvalues.
  std::vector<double> face_mass;
  /// tie_mass[i]: fraction of fits with d_hat_i == d_hat_{i+1}.
  std::vector<double> tie_mass;
  /// Mean of sqrt(n) (d_hat - d_true).
  std::vector<double> mean_scaled_error;
};

/// Law of the cone MLE at d_true: Ybar ~ N(diag(d_true), sigma^2 / n, tau)
/// is drawn directly and projected with U0 = I.
ConeBoundaryLaw cone_boundary_law(std::span<const double> d_true, int n, int reps, std::uint64_t seed,
                                  const CovParams& cov = {}, int threads = 1);

enum class Estimator { MeanUnrestricted, Sigma2, Tau, PooledSigma2, PooledTau };

struct ConsistencyRow {
  int n = 0;
  double mean = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
};

/// Monte Carlo bias and RMSE of an estimator over a grid of sample sizes.
/// For MeanUnrestricted the error is the Frobenius norm of Ybar - M (mean
/// and bias then report the mean error norm). Two-sample estimators split n
/// evenly and use gen.mean2 for group 2.
std::vector<ConsistencyRow> consistency_study(Estimator est, const GeneratorSpec& gen,
                                              std::span<const int> n_grid, int reps, std::uint64_t seed,
                                              int threads = 1);

struct EigvecVarianceStudy {
  int n = 0;
  int reps = 0;
  /// Sample variance of sqrt(n) a_ij over replicates.
  Eigen::MatrixXd empirical_var;
  /// sigma^2 / (2 (d_i - d_j)^2).
  Eigen::MatrixXd predicted_var;
};

/// Repeatedly fits the known-eigenvalue MLE to data from N(U diag(d) U', cov)
/// and measures the spread of the tangent-space eigenvector error.
EigvecVarianceStudy eigvec_variance_study(const Eigen::MatrixXd& u_true, const std::vector<double>& d,
                                          const CovParams& cov, int n, int reps, std::uint64_t seed,
                                          int threads = 1);

}  // namespace symtest
