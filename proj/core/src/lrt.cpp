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

#include "symtest/lrt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "symtest/eigen_sym.hpp"
#include "symtest/errors.hpp"

namespace symtest {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kPlugIn = "sigma^2 and tau replaced by estimates under the null";
constexpr const char* kAsymptotic = "reference distribution is asymptotic";

struct Named {
  TestId id;
  const char* name;
};
constexpr std::array<Named, 11> kNames{{{TestId::A0, "a0"},
                                        {TestId::A1, "a1"},
                                        {TestId::A2, "a2"},
                                        {TestId::C2, "c2"},
                                        {TestId::S1, "s1"},
                                        {TestId::S2, "s2"},
                                        {TestId::S3, "s3"},
                                        {TestId::TwoA0, "2a0"},
                                        {TestId::TwoS1, "2s1"},
                                        {TestId::TwoS2, "2s2"},
                                        {TestId::CovCheck, "cov-check"}}};

// Fit with (sigma^2, tau) estimates. When the covariance is known the
// estimates are informational only, so degenerate data leaves them NaN.
FitResult fit_one(const ParamSet& set, const SampleSet& s, bool need_estimates) {
  if (need_estimates) return mle(set, s);
  try {
    return mle(set, s);
  } catch (const InputError&) {
    FitResult fit;
    fit.set = set;
    fit.m_hat = project(set, sample_mean(s), &fit.face_dim);
    fit.sigma2_hat = kNaN;
    fit.tau_hat = kNaN;
    return fit;
  }
}

FitResult2 fit_two(const ParamSet2& set, const SampleSet& s, int n1, bool need_estimates) {
  if (need_estimates) return mle2(set, s, n1);
  try {
    return mle2(set, s, n1);
  } catch (const InputError&) {
    const GroupMeans g = group_means(s, n1);
    FitResult2 fit;
    fit.set = set;
    std::tie(fit.m1_hat, fit.m2_hat) = project2(set, g.mean1, g.mean2, n1, s.size() - n1);
    fit.sigma2_hat = kNaN;
    fit.tau_hat = kNaN;
    return fit;
  }
}

// Known covariance, or the plug-in from a null fit.
CovParams resolve_cov(const CovChoice& cov, double sigma2_hat, double tau_hat, int p) {
  if (cov) {
    cov->validate(p);
    return *cov;
  }
  CovParams est{sigma2_hat, tau_hat};
  if (!est.valid(p)) throw InputError("covariance estimates are degenerate (sigma2_hat <= 0)");
  return est;
}

void start(TestResult& r, TestId id, const SampleSet& s, const CovChoice& cov) {
  if (s.size() == 0) throw InputError("sample set is empty");
  r.test_id = id;
  r.n = s.size();
  r.cov_estimated = !cov.has_value();
  if (!cov && s.size() < 2) throw InputError("estimating sigma^2 and tau needs n >= 2");
}

void start2(TestResult& r, TestId id, const SampleSet& s, int n1, const CovChoice& cov) {
  check_split(s, n1);
  start(r, id, s, cov);
  r.n1 = n1;
  r.n2 = s.size() - n1;
  if (!cov && s.size() < 3) throw InputError("estimating sigma^2 and tau needs n >= 3 in two-sample tests");
}

// Plug-in chi-squared results are only asymptotic even for affine sets.
RefDist chisq(double df, bool exact) {
  if (exact) return ChiSq{df};
  return ChiSqApprox{df};
}

void finish(TestResult& r) {
  r.p_value = pvalue(r.dist, r.statistic);
  if (r.cov_estimated) r.warnings.emplace_back(kPlugIn);
  if (std::holds_alternative<ChiSqApprox>(r.dist) || std::holds_alternative<ChiSqMix>(r.dist)) {
    r.warnings.emplace_back(kAsymptotic);
  }
}

void check_dim(const SymMat& m, int p, const char* what) {
  if (m.dim() != p) {
    throw InputError(std::string(what) + " has dimension " + std::to_string(m.dim()) + ", data has " +
                     std::to_string(p));
  }
}

void check_u0(const Eigen::MatrixXd& u0, int p) {
  if (u0.rows() != p || u0.cols() != p) throw InputError("U0 must be p x p");
  check_orthogonal(u0, 1e-8, "U0");
}

int positive_df(int df, const char* what) {
  if (df <= 0) {
    throw InputError(std::string(what) + " has zero degrees of freedom for this multiplicity pattern");
  }
  return df;
}

double sq_dev_from_blocks(std::span<const double> lambda, const Multiplicities& mult) {
  const std::vector<double> blk = block_average(lambda, mult);
  double acc = 0.0;
  for (std::size_t i = 0; i < blk.size(); ++i) acc += (lambda[i] - blk[i]) * (lambda[i] - blk[i]);
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

std::string to_string(TestId id) {
  for (const Named& n : kNames) {
    if (n.id == id) return n.name;
  }
  throw InputError("unknown test id");
}

TestId test_id_from_string(const std::string& name) {
  for (const Named& n : kNames) {
    if (name == n.name) return n.id;
  }
  throw InputError("unknown test_id '" + name +
                   "' (expected a0, a1, a2, c2, s1, s2, s3, 2a0, 2s1, 2s2 or cov-check)");
}

bool is_two_sample(TestId id) {
  return id == TestId::TwoA0 || id == TestId::TwoS1 || id == TestId::TwoS2;
}

double clamp_statistic(double t, double scale, const char* what) {
  if (std::isnan(t)) throw ConsistencyError(std::string(what) + ": statistic is NaN");
  if (t >= 0.0) return t;
  const double tol = 1e-9 * std::max(1.0, std::abs(scale));
  if (t >= -tol) return 0.0;
  throw ConsistencyError(std::string(what) + ": likelihood-ratio statistic is negative (" + std::to_string(t) +
                         ") beyond rounding");
}

double llr_difference(const SymMat& ybar, const SymMat& m_null, const SymMat& m_alt, int n,
                      const CovParams& cov) {
  return n * norm_sq(ybar - m_null, cov) - n * norm_sq(ybar - m_alt, cov);
}

double llr_expanded(const SymMat& ybar, const SymMat& m_null, const SymMat& m_alt, int n,
                    const CovParams& cov) {
  return 2.0 * n * inner(ybar, m_alt - m_null, cov) + n * norm_sq(m_null, cov) - n * norm_sq(m_alt, cov);
}

double llr_difference2(const SymMat& ybar1, const SymMat& ybar2, const SymMat& m1_null,
                       const SymMat& m2_null, const SymMat& m1_alt, const SymMat& m2_alt, int n1,
                       int n2, const CovParams& cov) {
  return objective2(ybar1, ybar2, m1_null, m2_null, n1, n2, cov) -
         objective2(ybar1, ybar2, m1_alt, m2_alt, n1, n2, cov);
}

TestResult test_a0(const SampleSet& s, const SymMat& m0, const CovChoice& cov) {
  TestResult r;
  start(r, TestId::A0, s, cov);
  const int p = s.dim();
  const int q = packed_size(p);
  check_dim(m0, p, "M0");
  r.fit_null = fit_one(Point{m0}, s, false);
  r.fit_alt = fit_one(Unrestricted{}, s, !cov);
  const SymMat diff = r.fit_alt->m_hat - m0;
  if (cov) {
    r.cov = resolve_cov(cov, kNaN, kNaN, p);
    r.statistic = clamp_statistic(r.n * norm_sq(diff, r.cov), 0.0, "a0");
    r.dist = ChiSq{static_cast<double>(q)};
  } else {
    r.cov = resolve_cov(cov, r.fit_alt->sigma2_hat, r.fit_alt->tau_hat, p);
    const double num = (r.n - 1.0) * norm_sq(diff, CovParams{1.0, r.cov.tau});
    r.statistic = clamp_statistic(num / (q * r.cov.sigma2), 0.0, "a0");
    r.dist = FDist{static_cast<double>(q), static_cast<double>(q) * (r.n - 1)};
  }
  finish(r);
  return r;
}

TestResult test_a1(const SampleSet& s, const Eigen::MatrixXd& u0, const SymMat& m0, const CovChoice& cov) {
  TestResult r;
  start(r, TestId::A1, s, cov);
  const int p = s.dim();
  check_dim(m0, p, "M0");
  check_u0(u0, p);
  Eigen::MatrixXd w = u0.transpose() * m0.dense() * u0;
  const Eigen::VectorXd d0 = w.diagonal();
  w.diagonal().setZero();
  if (w.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, m0.max_abs())) {
    throw InputError("M0 is not diagonalised by U0");
  }
  r.fit_null = fit_one(Point{m0}, s, !cov);
  r.fit_alt = fit_one(FixedEigvecs{u0}, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  const Eigen::VectorXd d_hat = (u0.transpose() * r.fit_alt->m_hat.dense() * u0).diagonal();
  const Eigen::VectorXd diff = d_hat - d0;
  r.statistic = clamp_statistic(r.n * norm_sq_diag({diff.data(), static_cast<std::size_t>(p)}, r.cov), 0.0,
                                "a1");
  r.dist = chisq(p, cov.has_value());
  finish(r);
  return r;
}

TestResult test_a2(const SampleSet& s, const Eigen::MatrixXd& u0, const CovChoice& cov) {
  TestResult r;
  start(r, TestId::A2, s, cov);
  const int p = s.dim();
  check_u0(u0, p);
  r.fit_null = fit_one(FixedEigvecs{u0}, s, !cov);
  r.fit_alt = fit_one(Unrestricted{}, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  r.statistic = clamp_statistic(r.n * norm_sq(r.fit_alt->m_hat - r.fit_null->m_hat, r.cov), 0.0, "a2");
  r.dist = chisq(packed_size(p) - p, cov.has_value());
  finish(r);
  return r;
}

TestResult test_c2(const SampleSet& s, const Eigen::MatrixXd& u0, const std::vector<double>& cone_weights,
                   const CovChoice& cov) {
  TestResult r;
  start(r, TestId::C2, s, cov);
  const int p = s.dim();
  const int q = packed_size(p);
  check_u0(u0, p);
  if (cone_weights.empty()) throw InputError("cone test needs mixture weights");
  if (static_cast<int>(cone_weights.size()) != p) {
    throw InputError("cone weights must have p = " + std::to_string(p) + " entries (face dimensions 1..p)");
  }
  const double total = std::accumulate(cone_weights.begin(), cone_weights.end(), 0.0);
  if (std::any_of(cone_weights.begin(), cone_weights.end(), [](double w) { return !(w >= 0.0); }) ||
      std::abs(total - 1.0) > 1e-6) {
    throw InputError("cone weights must be non-negative and sum to 1");
  }
  ChiSqMix mix;
  for (int k = 1; k <= p; ++k) {
    mix.weights.push_back(cone_weights[k - 1] / total);
    mix.dfs.push_back(q - k);
  }
  r.fit_null = fit_one(OrderedCone{u0}, s, !cov);
  r.fit_alt = fit_one(Unrestricted{}, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  r.statistic = clamp_statistic(r.n * norm_sq(r.fit_alt->m_hat - r.fit_null->m_hat, r.cov), 0.0, "c2");
  r.dist = std::move(mix);
  finish(r);
  return r;
}

TestResult test_s1(const SampleSet& s, const SymMat& m0, const std::vector<double>& d0,
                   const Multiplicities& mult, const CovChoice& cov) {
  TestResult r;
  start(r, TestId::S1, s, cov);
  const int p = s.dim();
  check_dim(m0, p, "M0");
  const FixedEigvals alt_set{d0, mult};
  validate(ParamSet{alt_set}, p);
  const EigenDecomp e0 = eigh_desc(m0);
  const double scale = std::max(1.0, std::abs(d0.front()) + std::abs(d0.back()));
  for (int i = 0; i < p; ++i) {
    if (std::abs(e0.values[i] - d0[i]) > 1e-8 * scale) throw InputError("M0 does not have spectrum D0");
  }
  const int df = positive_df(packed_size(p) - mult.sum_block_params(), "s1");
  r.fit_null = fit_one(Point{m0}, s, !cov);
  r.fit_alt = fit_one(alt_set, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  const SymMat ybar = sample_mean(s);
  const std::vector<double> lambda = eigh_desc(ybar).values;
  const double a = dot(lambda, d0);
  const double b = trace_product(ybar, m0);
  const double factor = 2.0 * r.n / r.cov.sigma2;
  r.statistic = clamp_statistic(factor * (a - b), factor * (std::abs(a) + std::abs(b)), "s1");
  r.dist = ChiSqApprox{static_cast<double>(df)};
  finish(r);
  return r;
}

TestResult test_s2(const SampleSet& s, const std::vector<double>& d0, const Multiplicities& mult,
                   const CovChoice& cov) {
  TestResult r;
  start(r, TestId::S2, s, cov);
  const int p = s.dim();
  const FixedEigvals null_set{d0, mult};
  validate(ParamSet{null_set}, p);
  r.fit_null = fit_one(null_set, s, !cov);
  r.fit_alt = fit_one(Unrestricted{}, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  const std::vector<double> lambda = eigh_desc(r.fit_alt->m_hat).values;
  r.statistic = clamp_statistic(r.n * norm_sq_diag(minus(lambda, d0), r.cov), 0.0, "s2");
  r.dist = ChiSqApprox{static_cast<double>(mult.sum_block_params())};
  finish(r);
  return r;
}

TestResult test_s3(const SampleSet& s, const Multiplicities& mult, const CovChoice& cov) {
  TestResult r;
  start(r, TestId::S3, s, cov);
  const int p = s.dim();
  mult.check_dim(p);
  const int df = positive_df(mult.sum_block_params() - mult.blocks(), "s3");
  r.fit_null = fit_one(MultSet{mult}, s, !cov);
  r.fit_alt = fit_one(Unrestricted{}, s, false);
  r.cov = resolve_cov(cov, r.fit_null->sigma2_hat, r.fit_null->tau_hat, p);
  const std::vector<double> lambda = eigh_desc(r.fit_alt->m_hat).values;
  r.statistic = clamp_statistic(r.n / r.cov.sigma2 * sq_dev_from_blocks(lambda, mult), 0.0, "s3");
  r.dist = ChiSqApprox{static_cast<double>(df)};
  finish(r);
  return r;
}

int sigma_structure_min_n(int p) {
  const int q = packed_size(p);
  return q * (q + 3) / 2 + 1;
}

TestResult test_sigma_structure(const SampleSet& s) {
  TestResult r;
  start(r, TestId::CovCheck, s, std::nullopt);
  const int p = s.dim();
  const int q = packed_size(p);
  if (r.n < sigma_structure_min_n(p)) {
    throw InputError("covariance-structure check needs n > q(q+3)/2, i.e. at least " +
                     std::to_string(sigma_structure_min_n(p)) + " observations for p = " + std::to_string(p) +
                     " (got " + std::to_string(r.n) + ")");
  }
  r.fit_alt = mle(Unrestricted{}, s);
  r.cov = resolve_cov(std::nullopt, r.fit_alt->sigma2_hat, r.fit_alt->tau_hat, p);
  const Eigen::LLT<Eigen::MatrixXd> llt(empirical_sigma(s));
  if (llt.info() != Eigen::Success) throw NumericalError("empirical covariance is singular");
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  double log_det = 0.0;
  for (int i = 0; i < q; ++i) {
    if (!(diag(i) > 0.0)) throw NumericalError("empirical covariance is singular");
    log_det += 2.0 * std::log(diag(i));
  }
  const double a = q * std::log(r.cov.sigma2);
  const double b = std::log1p(-p * r.cov.tau);
  const double t = r.n * (a - b - log_det);
  r.statistic = clamp_statistic(t, r.n * (std::abs(a) + std::abs(b) + std::abs(log_det)), "cov-check");
  r.dist = ChiSqApprox{q * (q + 1) / 2.0 - 2.0};
  finish(r);
  if (!(r.cov.tau > 0.0)) {
    r.warnings.emplace_back("tau_hat <= 0: the chi-squared calibration is only claimed for tau clearly above 0");
  }
  return r;
}

TestResult test2_a0(const SampleSet& s, int n1, const CovChoice& cov) {
  TestResult r;
  start2(r, TestId::TwoA0, s, n1, cov);
  const int p = s.dim();
  const int q = packed_size(p);
  r.fit2_null = fit_two(EqualMeans{}, s, n1, false);
  r.fit2_alt = fit_two(Unrestricted2{}, s, n1, !cov);
  const SymMat delta = r.fit2_alt->m1_hat - r.fit2_alt->m2_hat;
  const double n = r.n;
  const double w = static_cast<double>(r.n1) * r.n2;
  if (cov) {
    r.cov = resolve_cov(cov, kNaN, kNaN, p);
    r.statistic = clamp_statistic(w / n * norm_sq(delta, r.cov), 0.0, "2a0");
    r.dist = ChiSq{static_cast<double>(q)};
  } else {
    r.cov = resolve_cov(cov, r.fit2_alt->sigma2_hat, r.fit2_alt->tau_hat, p);
    const double num = (n - 2.0) * w * norm_sq(delta, CovParams{1.0, r.cov.tau});
    r.statistic = clamp_statistic(num / (q * n * n * r.cov.sigma2), 0.0, "2a0");
    r.dist = FDist{static_cast<double>(q), static_cast<double>(q) * (r.n - 2)};
  }
  finish(r);
  return r;
}

TestResult test2_s1(const SampleSet& s, int n1, const Multiplicities& mult, const CovChoice& cov) {
  TestResult r;
  start2(r, TestId::TwoS1, s, n1, cov);
  const int p = s.dim();
  mult.check_dim(p);
  r.fit2_null = fit_two(CommonEigvals{mult}, s, n1, !cov);
  r.fit2_alt = fit_two(Unrestricted2{}, s, n1, false);
  r.cov = resolve_cov(cov, r.fit2_null->sigma2_hat, r.fit2_null->tau_hat, p);
  const std::vector<double> l1 = eigh_desc(r.fit2_alt->m1_hat).values;
  const std::vector<double> l2 = eigh_desc(r.fit2_alt->m2_hat).values;
  const double n = r.n;
  std::vector<double> lbar(p);
  for (int i = 0; i < p; ++i) lbar[i] = (r.n1 * l1[i] + r.n2 * l2[i]) / n;
  const double first = static_cast<double>(r.n1) * r.n2 / n * norm_sq_diag(minus(l1, l2), r.cov);
  const double second = n / r.cov.sigma2 * sq_dev_from_blocks(lbar, mult);
  r.statistic = clamp_statistic(first + second, 0.0, "2s1");
  r.dist = ChiSqApprox{static_cast<double>(2 * mult.sum_block_params() - mult.blocks())};
  finish(r);
  return r;
}

TestResult test2_s2(const SampleSet& s, int n1, const Multiplicities& mult, const CovChoice& cov) {
  TestResult r;
  start2(r, TestId::TwoS2, s, n1, cov);
  const int p = s.dim();
  mult.check_dim(p);
  const int df = positive_df(packed_size(p) - mult.sum_block_params(), "2s2");
  r.fit2_null = fit_two(EqualMeans{mult}, s, n1, !cov);
  r.fit2_alt = fit_two(CommonEigvals{mult}, s, n1, false);
  r.cov = resolve_cov(cov, r.fit2_null->sigma2_hat, r.fit2_null->tau_hat, p);
  const GroupMeans g = group_means(s, n1);
  const std::vector<double> l1 = eigh_desc(g.mean1).values;
  const std::vector<double> l2 = eigh_desc(g.mean2).values;
  const std::vector<double> lpool = eigh_desc(g.pooled).values;
  const double n = r.n;
  std::vector<double> lbar(p);
  for (int i = 0; i < p; ++i) lbar[i] = (r.n1 * l1[i] + r.n2 * l2[i]) / n;
  const double a = dot(l1, l2);
  const double b = trace_product(g.mean1, g.mean2);
  const double c = sq_dev_from_blocks(lpool, mult);
  const double d = sq_dev_from_blocks(lbar, mult);
  const double w = 2.0 * r.n1 * r.n2 / (n * r.cov.sigma2);
  const double t = w * (a - b) + n / r.cov.sigma2 * (c - d);
  const double scale = w * (std::abs(a) + std::abs(b)) + n / r.cov.sigma2 * (c + d);
  r.statistic = clamp_statistic(t, scale, "2s2");
  r.dist = ChiSqApprox{static_cast<double>(df)};
  finish(r);
  return r;
}

TestSpec resolve(TestSpec spec, int p) {
  auto need_u0 = [&] {
    if (!spec.u0) throw InputError(to_string(spec.id) + " needs U0");
    check_u0(*spec.u0, p);
  };
  auto need_d0 = [&] {
    if (!spec.d0) throw InputError(to_string(spec.id) + " needs D0");
    if (static_cast<int>(spec.d0->size()) != p) throw InputError("D0 must have p entries");
  };
  auto need_mult = [&] {
    if (!spec.mult) throw InputError(to_string(spec.id) + " needs multiplicities");
    spec.mult->check_dim(p);
  };
  auto mult_from_d0 = [&] {
    if (!spec.mult) spec.mult = multiplicities_of(*spec.d0);
    spec.mult->check_dim(p);
  };
  if (spec.m0) check_dim(*spec.m0, p, "M0");

  switch (spec.id) {
    case TestId::A0:
      if (!spec.m0) throw InputError("a0 needs M0");
      break;
    case TestId::A1:
      need_u0();
      if (!spec.m0) {
        need_d0();
        spec.m0 = compose(*spec.u0, *spec.d0);
      }
      break;
    case TestId::A2:
      need_u0();
      break;
    case TestId::C2:
      need_u0();
      break;
    case TestId::S1:
      need_d0();
      mult_from_d0();
      if (!spec.m0) {
        need_u0();
        spec.m0 = compose(*spec.u0, *spec.d0);
      }
      break;
    case TestId::S2:
      need_d0();
      mult_from_d0();
      break;
    case TestId::S3:
    case TestId::TwoS1:
    case TestId::TwoS2:
      need_mult();
      break;
    case TestId::TwoA0:
    case TestId::CovCheck:
      break;
  }
  return spec;
}

TestResult run_test(const TestSpec& raw, const SampleSet& s) {
  const TestSpec spec = resolve(raw, s.dim());
  switch (spec.id) {
    case TestId::A0:
      return test_a0(s, *spec.m0, spec.cov);
    case TestId::A1:
      return test_a1(s, *spec.u0, *spec.m0, spec.cov);
    case TestId::A2:
      return test_a2(s, *spec.u0, spec.cov);
    case TestId::C2:
      return test_c2(s, *spec.u0, spec.cone_weights, spec.cov);
    case TestId::S1:
      return test_s1(s, *spec.m0, *spec.d0, *spec.mult, spec.cov);
    case TestId::S2:
      return test_s2(s, *spec.d0, *spec.mult, spec.cov);
    case TestId::S3:
      return test_s3(s, *spec.mult, spec.cov);
    case TestId::TwoA0:
      return test2_a0(s, spec.n1, spec.cov);
    case TestId::TwoS1:
      return test2_s1(s, spec.n1, *spec.mult, spec.cov);
    case TestId::TwoS2:
      return test2_s2(s, spec.n1, *spec.mult, spec.cov);
    case TestId::CovCheck:
      return test_sigma_structure(s);
  }
  throw InputError("unknown test id");
}

}  // namespace symtest
