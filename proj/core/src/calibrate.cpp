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

#include "symtest/calibrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "symtest/eigen_sym.hpp"
#include "symtest/errors.hpp"
#include "symtest/matnormal.hpp"
#include "symtest/onesample.hpp"
#include "symtest/pava.hpp"
#include "symtest/rng.hpp"
#include "symtest/twosample.hpp"

namespace symtest {
namespace {

SampleSet draw_data(const GeneratorSpec& gen, int n, int n1, bool two_sample, std::uint64_t seed) {
  if (!two_sample) return sample(n, gen.mean, gen.cov, seed, 0);
  const SymMat& mean2 = gen.mean2 ? *gen.mean2 : gen.mean;
  // Group 2 continues the substream numbering so the two groups never share draws.
  return SampleSet::concat(sample(n1, gen.mean, gen.cov, seed, 0),
                           sample(n - n1, mean2, gen.cov, seed, static_cast<std::uint64_t>(n1)));
}

}  // namespace

int default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::clamp(threads, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

bool truth_in_null(const TestSpec& raw, const GeneratorSpec& gen) {
  const int p = gen.mean.dim();
  const TestSpec spec = resolve(raw, p);
  const SymMat& m = gen.mean;
  const SymMat& m2 = gen.mean2 ? *gen.mean2 : gen.mean;
  switch (spec.id) {
    case TestId::A0:
    case TestId::A1:
    case TestId::S1:
      return contains(Point{*spec.m0}, m);
    case TestId::A2:
      return contains(FixedEigvecs{*spec.u0}, m);
    case TestId::C2:
      return contains(OrderedCone{*spec.u0}, m);
    case TestId::S2:
      return contains(FixedEigvals{*spec.d0, *spec.mult}, m);
    case TestId::S3:
      return contains(MultSet{*spec.mult}, m);
    case TestId::CovCheck:
      return true;
    case TestId::TwoA0:
      return contains(EqualMeans{}, m, m2);
    case TestId::TwoS1:
      return contains(CommonEigvals{*spec.mult}, m, m2);
    case TestId::TwoS2:
      return contains(EqualMeans{*spec.mult}, m, m2);
  }
  return false;
}

double empirical_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw InputError("empirical quantile of an empty sample");
  const double h = (sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

CalibrationReport calibrate_null(const TestSpec& raw, const GeneratorSpec& gen, const CalibrationOptions& opts) {
  if (opts.reps < 1000) throw InputError("calibration needs reps >= 1000");
  const int p = gen.mean.dim();
  gen.cov.validate(p);
  const TestSpec base = resolve(raw, p);
  if (!truth_in_null(base, gen)) {
    throw InputError("generator truth is not in the null set of test " + to_string(base.id));
  }
  const bool two = is_two_sample(base.id);
  CalibrationReport rep;
  rep.test_id = base.id;
  rep.reps = opts.reps;
  rep.n = opts.n;
  rep.seed = opts.seed;
  if (two) {
    rep.n1 = opts.n1 > 0 ? opts.n1 : opts.n / 2;
    rep.n2 = opts.n - rep.n1;
    if (rep.n1 < 1 || rep.n2 < 1) throw InputError("two-sample calibration needs both groups non-empty");
  }
  TestSpec spec = base;
  spec.n1 = rep.n1;

  rep.statistics.assign(opts.reps, 0.0);
  std::vector<double> pvalues(opts.reps, 0.0);
  std::vector<RefDist> first_dist(1);
  parallel_for(opts.reps, opts.threads, [&](int r) {
    const SampleSet data = draw_data(gen, opts.n, rep.n1, two, derive_seed(opts.seed, r));
    const TestResult res = run_test(spec, data);
    rep.statistics[r] = res.statistic;
    pvalues[r] = res.p_value;
    if (r == 0) first_dist[0] = res.dist;
  });
  rep.dist = first_dist[0];

  std::vector<double> sorted = rep.statistics;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < CalibrationReport::kProbs.size(); ++i) {
    rep.empirical_quantiles[i] = empirical_quantile(sorted, CalibrationReport::kProbs[i]);
    rep.theoretical_quantiles[i] = quantile(rep.dist, CalibrationReport::kProbs[i]);
  }
  rep.ks = ks_distance(sorted, rep.dist);
  const auto rejections = std::count_if(pvalues.begin(), pvalues.end(), [](double pv) { return pv < 0.05; });
  rep.rejection_rate = static_cast<double>(rejections) / opts.reps;
  return rep;
}

std::vector<std::pair<double, double>> qq_points(const CalibrationReport& report, int points) {
  if (points < 1) throw InputError("need at least one QQ point");
  std::vector<double> sorted = report.statistics;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (int k = 1; k <= points; ++k) {
    const double prob = static_cast<double>(k) / (points + 1);
    out.emplace_back(quantile(report.dist, prob), empirical_quantile(sorted, prob));
  }
  return out;
}

ConeWeights estimate_cone_weights(std::span<const double> d_true, int reps, std::uint64_t seed, int threads) {
  if (d_true.empty()) throw InputError("d_true is empty");
  if (reps < 1) throw InputError("reps must be >= 1");
  const int p = static_cast<int>(d_true.size());
  std::vector<int> dims(reps, 0);
  parallel_for(reps, threads, [&](int r) {
    NormalStream rng(seed, static_cast<std::uint64_t>(r));
    std::vector<double> y(p);
    for (int i = 0; i < p; ++i) y[i] = d_true[i] + rng.normal();
    dims[r] = pava_nonincreasing(y).face_dim;
  });
  ConeWeights out;
  out.d_true.assign(d_true.begin(), d_true.end());
  out.reps = reps;
  out.counts.assign(p, 0);
  for (int k : dims) ++out.counts[k - 1];
  for (long c : out.counts) out.weights.push_back(static_cast<double>(c) / reps);
  return out;
}

ConeWeights cone_weights_for_pattern(const Multiplicities& mult, int reps, std::uint64_t seed, int threads) {
  std::vector<double> d;
  for (int j = 0; j < mult.blocks(); ++j) {
    d.insert(d.end(), mult.size(j), 1e3 * (mult.blocks() - 1 - j));
  }
  return estimate_cone_weights(d, reps, seed, threads);
}

ConeBoundaryLaw cone_boundary_law(std::span<const double> d_true, int n, int reps, std::uint64_t seed,
                                  const CovParams& cov, int threads) {
  if (d_true.empty()) throw InputError("d_true is empty");
  if (n < 1 || reps < 1) throw InputError("need n >= 1 and reps >= 1");
  const int p = static_cast<int>(d_true.size());
  cov.validate(p);
  const SymMat truth = SymMat::diagonal(d_true);
  const CovParams mean_cov{cov.sigma2 / n, cov.tau};
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(p, p);
  std::vector<ConeFit> fits(reps);
  parallel_for(reps, threads, [&](int r) {
    const SampleSet ybar = sample(1, truth, mean_cov, derive_seed(seed, r));
    fits[r] = mle_ordered_cone(eye, ybar[0]);
  });
  ConeBoundaryLaw out;
  out.n = n;
  out.reps = reps;
  out.face_mass.assign(p, 0.0);
  out.tie_mass.assign(p - 1, 0.0);
  out.mean_scaled_error.assign(p, 0.0);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (const ConeFit& f : fits) {
    out.face_mass[f.face_dim - 1] += 1.0;
    for (int i = 0; i + 1 < p; ++i) {
      if (f.d_hat[i] == f.d_hat[i + 1]) out.tie_mass[i] += 1.0;
    }
    for (int i = 0; i < p; ++i) out.mean_scaled_error[i] += root_n * (f.d_hat[i] - d_true[i]);
  }
  for (double& v : out.face_mass) v /= reps;
  for (double& v : out.tie_mass) v /= reps;
  for (double& v : out.mean_scaled_error) v /= reps;
  return out;
}

std::vector<ConsistencyRow> consistency_study(Estimator est, const GeneratorSpec& gen,
                                              std::span<const int> n_grid, int reps, std::uint64_t seed,
                                              int threads) {
  if (reps < 2) throw InputError("consistency study needs reps >= 2");
  const int p = gen.mean.dim();
  gen.cov.validate(p);
  const bool two = est == Estimator::PooledSigma2 || est == Estimator::PooledTau;
  double truth = 0.0;
  if (est == Estimator::Sigma2 || est == Estimator::PooledSigma2) truth = gen.cov.sigma2;
  if (est == Estimator::Tau || est == Estimator::PooledTau) truth = gen.cov.tau;

  std::vector<ConsistencyRow> rows;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const int n = n_grid[g];
    if (n < (two ? 4 : 2)) throw InputError("sample sizes in the grid are too small");
    const int n1 = n / 2;
    std::vector<double> values(reps, 0.0);
    parallel_for(reps, threads, [&](int r) {
      const std::uint64_t s = derive_seed(derive_seed(seed, g), r);
      const SampleSet data = draw_data(gen, n, n1, two, s);
      switch (est) {
        case Estimator::MeanUnrestricted: {
          const SymMat diff = sample_mean(data) - gen.mean;
          values[r] = std::sqrt(trace_product(diff, diff));
          break;
        }
        case Estimator::Sigma2:
          values[r] = mle(Unrestricted{}, data).sigma2_hat;
          break;
        case Estimator::Tau:
          values[r] = mle(Unrestricted{}, data).tau_hat;
          break;
        case Estimator::PooledSigma2:
          values[r] = mle2(Unrestricted2{}, data, n1).sigma2_hat;
          break;
        case Estimator::PooledTau:
          values[r] = mle2(Unrestricted2{}, data, n1).tau_hat;
          break;
      }
    });
    ConsistencyRow row;
    row.n = n;
    double sq = 0.0;
    for (double v : values) {
      row.mean += v;
      sq += (v - truth) * (v - truth);
    }
    row.mean /= reps;
    row.bias = row.mean - truth;
    row.rmse = std::sqrt(sq / reps);
    rows.push_back(row);
  }
  return rows;
}

EigvecVarianceStudy eigvec_variance_study(const Eigen::MatrixXd& u_true, const std::vector<double>& d,
                                          const CovParams& cov, int n, int reps, std::uint64_t seed,
                                          int threads) {
  const int p = static_cast<int>(d.size());
  if (reps < 2) throw InputError("variance study needs reps >= 2");
  check_orthogonal(u_true, 1e-8, "U");
  cov.validate(p);
  const Multiplicities mult = multiplicities_of(d);
  if (mult.blocks() != p) throw InputError("eigenvalues must be distinct");
  const SymMat truth = compose(u_true, d);
  std::vector<Eigen::MatrixXd> a(reps);
  parallel_for(reps, threads, [&](int r) {
    const SampleSet data = sample(n, truth, cov, derive_seed(seed, r));
    const SymMat fit = mle_fixed_eigvals(d, mult, sample_mean(data));
    a[r] = std::sqrt(static_cast<double>(n)) * eigvec_uncertainty(u_true, d, fit, n, cov.sigma2).a_hat;
  });
  EigvecVarianceStudy out;
  out.n = n;
  out.reps = reps;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
  for (const auto& m : a) mean += m;
  mean /= reps;
  out.empirical_var = Eigen::MatrixXd::Zero(p, p);
  for (const auto& m : a) out.empirical_var += (m - mean).cwiseAbs2();
  out.empirical_var /= (reps - 1.0);
  out.predicted_var = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i != j) out.predicted_var(i, j) = cov.sigma2 / (2.0 * (d[i] - d[j]) * (d[i] - d[j]));
    }
  }
  return out;
}

}  // namespace symtest
