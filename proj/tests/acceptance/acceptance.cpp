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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured quantities; the exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cli.hpp"
#include "projection_oracle.hpp"
#include "schema_check.hpp"
#include "symtest/calibrate.hpp"
#include "symtest/eigen_sym.hpp"
#include "symtest/lrt.hpp"
#include "symtest/matnormal.hpp"
#include "symtest/onesample.hpp"
#include "symtest/symmat.hpp"
#include "symtest/twosample.hpp"

namespace symtest {
namespace {

namespace fs = std::filesystem;
using testing::ProjectionOracle;
using testing::Rand;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

const int kThreads = default_threads();

// 1. Cone mixture weights.
void cone_weights(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConeWeights iso = estimate_cone_weights(std::vector<double>{0, 0, 0}, 100000, 20260101, kThreads);
  const ConeWeights obl = cone_weights_for_pattern(Multiplicities({2, 1}), 100000, 20260102, kThreads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // weights[k-1] belongs to chi^2(q - k); list them by ascending df.
  const std::vector<double> iso_df(iso.weights.rbegin(), iso.weights.rend());
  const std::vector<double> obl_df(obl.weights.rbegin(), obl.weights.rend());
  const double want[3] = {1.0 / 6, 0.5, 1.0 / 3};
  for (int i = 0; i < 3; ++i) v.require(std::abs(iso_df[i] - want[i]) <= 0.01, "isotropic weight " + std::to_string(i));
  v.require(std::abs(obl_df[0] - 0.5) <= 0.01 && std::abs(obl_df[1] - 0.5) <= 0.01, "oblate weights");
  v.require(obl_df[2] <= 0.01, "oblate weight on chi2(5)");
  v.require(secs < 30.0, "runtime");
  v.detail << "isotropic (df 3,4,5) = (" << fmt(iso_df[0]) << ", " << fmt(iso_df[1]) << ", " << fmt(iso_df[2])
           << "); oblate (df 3,4) = (" << fmt(obl_df[0]) << ", " << fmt(obl_df[1]) << "); " << fmt(secs, 3) << " s";
}

CalibrationReport calibrate(const TestSpec& spec, const GeneratorSpec& gen, int n, int reps, std::uint64_t seed,
                            int n1 = 0) {
  CalibrationOptions opts;
  opts.n = n;
  opts.n1 = n1;
  opts.reps = reps;
  opts.seed = seed;
  opts.threads = kThreads;
  return calibrate_null(resolve(spec, gen.mean.dim()), gen, opts);
}

// 2. Exact tests under known covariance.
void exact_calibration(Verdict& v) {
  Rand rng(2);
  const CovParams cov{1.0, 0.1};
  const Eigen::MatrixXd u0 = rng.rotation(3);
  const SymMat m0 = compose(u0, std::vector<double>{3, 2, 1});
  const GeneratorSpec gen{m0, std::nullopt, cov};

  TestSpec a0;
  a0.id = TestId::A0;
  a0.m0 = m0;
  a0.cov = cov;
  TestSpec a1 = a0;
  a1.id = TestId::A1;
  a1.u0 = u0;
  TestSpec a2;
  a2.id = TestId::A2;
  a2.u0 = u0;
  a2.cov = cov;

  std::uint64_t seed = 200;
  for (const TestSpec& spec : {a0, a1, a2}) {
    const CalibrationReport r = calibrate(spec, gen, 50, 5000, ++seed);
    v.require(r.rejection_rate >= 0.04 && r.rejection_rate <= 0.06, to_string(spec.id) + " size");
    v.detail << to_string(spec.id) << " alpha=" << fmt(r.rejection_rate) << " ";
  }
}

// 3. Asymptotic tests.
void asymptotic_calibration(Verdict& v) {
  Rand rng(3);
  const CovParams cov{1.0, 0.1};
  const std::vector<double> distinct{4, 2, 1};
  const Multiplicities three = Multiplicities::distinct(3);
  const Eigen::MatrixXd u = rng.rotation(3);
  const SymMat m_distinct = compose(u, distinct);

  struct Case {
    TestSpec spec;
    GeneratorSpec gen;
    int n;
    int n1;
  };
  std::vector<Case> cases;

  TestSpec s1;
  s1.id = TestId::S1;
  s1.m0 = m_distinct;
  s1.d0 = distinct;
  s1.mult = three;
  s1.cov = cov;
  cases.push_back({s1, {m_distinct, std::nullopt, cov}, 250, 0});

  TestSpec s2 = s1;
  s2.id = TestId::S2;
  s2.m0.reset();
  cases.push_back({s2, {compose(rng.rotation(3), distinct), std::nullopt, cov}, 250, 0});

  TestSpec s3;
  s3.id = TestId::S3;
  s3.mult = Multiplicities({1, 2});
  s3.cov = cov;
  cases.push_back({s3, {compose(rng.rotation(3), std::vector<double>{3, 1, 1}), std::nullopt, cov}, 250, 0});

  TestSpec t1;
  t1.id = TestId::TwoS1;
  t1.mult = three;
  t1.cov = cov;
  cases.push_back({t1, {m_distinct, compose(rng.rotation(3), distinct), cov}, 500, 250});

  TestSpec t2 = t1;
  t2.id = TestId::TwoS2;
  cases.push_back({t2, {m_distinct, m_distinct, cov}, 500, 250});

  std::uint64_t seed = 300;
  for (const Case& c : cases) {
    const CalibrationReport r = calibrate(c.spec, c.gen, c.n, 5000, ++seed, c.n1);
    v.require(r.ks < 0.03, to_string(c.spec.id) + " ks");
    v.require(r.rejection_rate >= 0.035 && r.rejection_rate <= 0.07, to_string(c.spec.id) + " size");
    v.detail << to_string(c.spec.id) << " ks=" << fmt(r.ks, 3) << " alpha=" << fmt(r.rejection_rate, 3) << " ";
  }
}

// 4. Covariance-structure test: size under an invariant truth, power against
// a vecd covariance with one doubled diagonal variance.
void covariance_check(Verdict& v) {
  const CovParams cov{1.0, 0.2};
  const SymMat mean = SymMat::diagonal(std::vector<double>{1, 0, -1});
  TestSpec spec;
  spec.id = TestId::CovCheck;
  const CalibrationReport r = calibrate(spec, {mean, std::nullopt, cov}, 500, 2000, 400);
  v.require(r.rejection_rate >= 0.03 && r.rejection_rate <= 0.08, "size");

  Eigen::MatrixXd sigma = build_sigma(3, cov);
  sigma(0, 0) *= 2.0;
  const Eigen::MatrixXd chol = sigma.llt().matrixL();
  const Eigen::VectorXd mu = vecd(mean);
  std::mt19937_64 eng(401);
  std::normal_distribution<double> z;
  const int reps = 500;
  int rejected = 0;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<SymMat> obs;
    for (int i = 0; i < 500; ++i) {
      Eigen::VectorXd e(6);
      for (int k = 0; k < 6; ++k) e(k) = z(eng);
      obs.push_back(vecd_inv(mu + chol * e));
    }
    rejected += test_sigma_structure(SampleSet(std::move(obs))).p_value < 0.05;
  }
  const double power = static_cast<double>(rejected) / reps;
  v.require(power > 0.9, "power");
  v.detail << "alpha=" << fmt(r.rejection_rate) << " power=" << fmt(power);
}

// 5. Eigenvector tangent-space variance.
void eigvec_variance(Verdict& v) {
  Rand rng(5);
  const EigvecVarianceStudy st =
      eigvec_variance_study(rng.rotation(3), {4, 2, 1}, CovParams{1.0, 0.0}, 500, 2000, 500, kThreads);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double ratio = st.empirical_var(i, j) / st.predicted_var(i, j);
      v.require(std::abs(ratio - 1.0) <= 0.1, "pair " + std::to_string(i) + std::to_string(j));
      v.detail << "(" << i + 1 << "," << j + 1 << ") emp/pred=" << fmt(ratio) << " ";
    }
  }
}

// 6. Closed-form projections against brute-force minimisation.
struct OracleTally {
  double worst = 0.0;
  int retries = 0;
};

/// Compares a closed-form objective with the oracle's; a failed oracle search
/// is repeated once with more random starts before the instance counts as a
/// mismatch.
void compare(OracleTally& tally, Verdict& v, const std::string& name, double closed,
             const std::function<double(ProjectionOracle&)>& search, std::uint64_t seed) {
  constexpr double kTol = 1e-6;
  ProjectionOracle oracle(seed);
  double brute = search(oracle);
  if (brute > closed + kTol) {
    ++tally.retries;
    ProjectionOracle wide(seed + 1000003, 12);
    brute = std::min(brute, search(wide));
  }
  tally.worst = std::max(tally.worst, std::abs(closed - brute));
  if (std::abs(closed - brute) > kTol) v.require(false, name + " gap " + fmt(closed - brute));
}

void projection_oracle(Verdict& v) {
  constexpr int kInstances = 1000;
  const std::vector<std::vector<int>> patterns2{{2}, {1, 1}};
  const std::vector<std::vector<int>> patterns3{{3}, {1, 2}, {2, 1}, {1, 1, 1}};
  Rand rng(6);
  auto p_of = [](int i) { return i % 2 == 0 ? 2 : 3; };
  auto pattern_of = [&](int i) {
    return p_of(i) == 2 ? patterns2[(i / 2) % patterns2.size()] : patterns3[(i / 2) % patterns3.size()];
  };
  std::uint64_t seed = 6000;
  OracleTally eigvecs, cone, eigvals, mult, common;

  for (int i = 0; i < kInstances; ++i) {
    const int p = p_of(i);
    const SymMat y = rng.symmetric(p);
    const Eigen::MatrixXd u0 = rng.orthogonal(p);
    const double closed = testing::frob_sq(y, mle_fixed_eigvecs(u0, y));
    compare(eigvecs, v, "fixed eigvecs", closed, [&](ProjectionOracle& o) { return o.fixed_eigvecs(u0, y).value; },
            ++seed);
  }
  for (int i = 0; i < kInstances; ++i) {
    const int p = p_of(i);
    const SymMat y = rng.symmetric(p);
    const Eigen::MatrixXd u0 = rng.orthogonal(p);
    const double closed = testing::frob_sq(y, mle_ordered_cone(u0, y).m_hat);
    compare(cone, v, "ordered cone", closed, [&](ProjectionOracle& o) { return o.ordered_cone(u0, y).value; },
            ++seed);
  }
  for (int i = 0; i < kInstances; ++i) {
    const std::vector<int> pattern = pattern_of(i);
    const int p = p_of(i);
    const SymMat y = rng.symmetric(p);
    const std::vector<double> d0 = rng.ordered_with_pattern(pattern);
    const double closed = testing::frob_sq(y, mle_fixed_eigvals(d0, Multiplicities(pattern), y));
    compare(eigvals, v, "fixed eigvals", closed, [&](ProjectionOracle& o) { return o.fixed_eigvals(d0, y).value; },
            ++seed);
  }
  for (int i = 0; i < kInstances; ++i) {
    const std::vector<int> pattern = pattern_of(i);
    const SymMat y = rng.symmetric(p_of(i));
    const double closed = testing::frob_sq(y, mle_multiplicities(Multiplicities(pattern), y));
    compare(mult, v, "multiplicities", closed, [&](ProjectionOracle& o) { return o.multiplicities(pattern, y).value; },
            ++seed);
  }
  // Weighted objective reported per observation: (n1 f1 + n2 f2) / (n1 + n2).
  for (int i = 0; i < kInstances; ++i) {
    const std::vector<int> pattern = pattern_of(i);
    const int p = p_of(i);
    const SymMat y1 = rng.symmetric(p), y2 = rng.symmetric(p);
    const int n1 = rng.integer(3, 30), n2 = rng.integer(3, 30);
    const double n = n1 + n2;
    const auto [m1, m2] = mle_common_eigvals(Multiplicities(pattern), y1, y2, n1, n2);
    const double closed = (n1 * testing::frob_sq(y1, m1) + n2 * testing::frob_sq(y2, m2)) / n;
    compare(common, v, "common eigvals", closed,
            [&](ProjectionOracle& o) { return o.common_eigvals(pattern, y1, y2, n1, n2).value / n; }, ++seed);
  }
  const std::pair<const char*, OracleTally*> rows[] = {
      {"eigvecs", &eigvecs}, {"cone", &cone}, {"eigvals", &eigvals}, {"mult", &mult}, {"common", &common}};
  for (const auto& [name, t] : rows) v.detail << name << " max|gap|=" << fmt(t->worst, 2) << " ";
}

// 7. Residual of each projection is orthogonal to the tangent space of its
// set in the (sigma^2, tau) inner product.
void tangent_orthogonality(Verdict& v) {
  constexpr double kTol = 1e-8;
  Rand rng(7);
  double worst = 0.0;
  auto check = [&](double value) { worst = std::max(worst, std::abs(value)); };
  for (double tau : {-1.0, 0.0, 0.3}) {
    const CovParams cov{0.7, tau};
    for (int trial = 0; trial < 200; ++trial) {
      const SymMat y = rng.symmetric(3);
      const Eigen::MatrixXd u0 = rng.orthogonal(3);

      const SymMat m_vec = mle_fixed_eigvecs(u0, y);
      for (const SymMat& t : testing::block_tangents(u0, {{0}, {1}, {2}})) check(inner(y - m_vec, t, cov));

      const ConeFit cone = mle_ordered_cone(u0, y);
      for (const SymMat& t : testing::block_tangents(u0, testing::tie_groups(cone.d_hat, 0.0))) {
        check(inner(y - cone.m_hat, t, cov));
      }

      const std::vector<double> d0 = rng.ordered_with_pattern({1, 1, 1});
      const SymMat m_val = mle_fixed_eigvals(d0, Multiplicities::distinct(3), y);
      for (const SymMat& t : testing::rotation_tangents(m_val)) check(inner(y - m_val, t, cov));

      const std::vector<int> pattern = trial % 2 == 0 ? std::vector<int>{1, 2} : std::vector<int>{2, 1};
      const SymMat m_mult = mle_multiplicities(Multiplicities(pattern), y);
      for (const SymMat& t : testing::rotation_tangents(m_mult)) check(inner(y - m_mult, t, cov));
      for (const SymMat& t : testing::block_tangents(eigh_desc(m_mult).vectors, testing::pattern_groups(pattern))) {
        check(inner(y - m_mult, t, cov));
      }

      const SymMat y2 = rng.symmetric(3);
      const int n1 = rng.integer(3, 30), n2 = rng.integer(3, 30);
      const auto [c1, c2] = mle_common_eigvals(Multiplicities(pattern), y, y2, n1, n2);
      for (const SymMat& t : testing::rotation_tangents(c1)) check(inner(y - c1, t, cov));
      for (const SymMat& t : testing::rotation_tangents(c2)) check(inner(y2 - c2, t, cov));
      const auto g = testing::pattern_groups(pattern);
      const auto t1 = testing::block_tangents(eigh_desc(c1).vectors, g);
      const auto t2 = testing::block_tangents(eigh_desc(c2).vectors, g);
      for (std::size_t j = 0; j < t1.size(); ++j) {
        check((n1 * inner(y - c1, t1[j], cov) + n2 * inner(y2 - c2, t2[j], cov)) / (n1 + n2));
      }
    }
  }
  v.require(worst <= kTol, "max inner product");
  v.detail << "max |<residual, tangent>| = " << fmt(worst, 3);
}

// 8. Covariance estimators at n = 10^4.
void estimator_consistency(Verdict& v) {
  const std::vector<int> grid{10000};
  const double sigma2 = 0.8;
  std::uint64_t seed = 800;
  for (double tau : {-0.5, 0.0, 0.2}) {
    const GeneratorSpec gen{SymMat::diagonal(std::vector<double>{2, 1, 0}),
                            SymMat::diagonal(std::vector<double>{-1, 1, 4}), CovParams{sigma2, tau}};
    const auto s1 = consistency_study(Estimator::Sigma2, gen, grid, 10, ++seed, kThreads)[0];
    const auto t1 = consistency_study(Estimator::Tau, gen, grid, 10, ++seed, kThreads)[0];
    const auto s2 = consistency_study(Estimator::PooledSigma2, gen, grid, 10, ++seed, kThreads)[0];
    const auto t2 = consistency_study(Estimator::PooledTau, gen, grid, 10, ++seed, kThreads)[0];
    const std::string at = " at tau=" + fmt(tau, 2);
    v.require(s1.rmse <= 0.05 * sigma2, "sigma2" + at);
    v.require(t1.rmse <= 0.02, "tau" + at);
    v.require(s2.rmse <= 0.05 * sigma2, "pooled sigma2" + at);
    v.require(t2.rmse <= 0.02, "pooled tau" + at);
    v.detail << "tau=" << fmt(tau, 2) << ": rmse " << fmt(s1.rmse / sigma2, 2) << "/" << fmt(t1.rmse, 2) << "/"
             << fmt(s2.rmse / sigma2, 2) << "/" << fmt(t2.rmse, 2) << " ";
  }
}

// 9. Algebraic identities.
void identities(Verdict& v) {
  constexpr double kTol = 1e-9;
  Rand rng(9);
  double worst[4] = {0, 0, 0, 0};
  auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); };
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = rng.integer(2, 5);
    const CovParams cov{rng.uniform(0.2, 3.0), rng.uniform(-1.0, 0.9 / p)};
    const SymMat y = rng.symmetric(p), m0 = rng.symmetric(p), ma = rng.symmetric(p);
    const int n = rng.integer(2, 500);
    worst[0] = std::max(worst[0], rel(llr_difference(y, m0, ma, n, cov), llr_expanded(y, m0, ma, n, cov)));

    const SymMat y2 = rng.symmetric(p), mb = rng.symmetric(p);
    const int n1 = rng.integer(1, 200), n2 = rng.integer(1, 200);
    worst[1] = std::max(worst[1], rel(objective2(y, y2, m0, mb, n1, n2, cov), objective2_split(y, y2, m0, mb, n1, n2, cov)));

    worst[2] = std::max(worst[2], rel(vecd(y).dot(vecd(m0)), (y.dense() * m0.dense()).trace()));
    worst[2] = std::max(worst[2], static_cast<double>(max_abs_diff(vecd_inv(vecd(y)), y)));

    SymMat a = rng.symmetric(p);
    a -= SymMat::identity(p, a.trace() / p);
    const double base = inner(a, y, CovParams{cov.sigma2, 0.0});
    for (double tau : {-1.0, 0.5 / p, 0.99 / p}) worst[3] = std::max(worst[3], rel(base, inner(a, y, CovParams{cov.sigma2, tau})));
  }
  const char* names[] = {"llr", "objective split", "vecd", "trace-free"};
  for (int k = 0; k < 4; ++k) {
    v.require(worst[k] <= kTol, names[k]);
    v.detail << names[k] << "=" << fmt(worst[k], 2) << " ";
  }
}

// 10. CLI round trip, report schema and exit codes.
std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

struct Outcome {
  int code;
  std::string out;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

void cli_contract(Verdict& v) {
  const fs::path dir = fs::temp_directory_path() / "symtest_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  const testing::SchemaCheck schema = testing::SchemaCheck::from_file(SYMTEST_SCHEMA_PATH);
  int reports = 0;
  auto valid = [&](const Outcome& r, const std::string& what) {
    v.require(r.code == cli::kOk, what + " exit code");
    if (r.code != cli::kOk) return;
    ++reports;
    v.require(schema.validate(nlohmann::json::parse(r.out)).empty(), what + " schema");
  };

  write(at("sim.json"), R"({"p": 3, "n": 60, "M": [[3, 0, 0], [0, 1, 0], [0, 0, 1]], "sigma2": 1, "tau": 0.1, "seed": 17})");
  write(at("h.json"), R"({"test_id": "s3", "multiplicities": [1, 2]})");
  v.require(invoke({"simulate", "--config", at("sim.json"), "--out", at("a.csv")}).code == cli::kOk, "simulate");
  v.require(invoke({"simulate", "--config", at("sim.json"), "--out", at("b.csv")}).code == cli::kOk, "simulate");
  v.require(invoke({"simulate", "--config", at("sim.json"), "--out", at("c.csv"), "--seed", "18"}).code == cli::kOk,
            "simulate");
  v.require(slurp(at("a.csv")) == slurp(at("b.csv")), "same seed gives identical data");
  v.require(slurp(at("a.csv")) != slurp(at("c.csv")), "different seed gives different data");

  const Outcome ra = invoke({"test", "--data", at("a.csv"), "--config", at("h.json"), "--no-timestamp"});
  const Outcome rb = invoke({"test", "--data", at("b.csv"), "--config", at("h.json"), "--no-timestamp"});
  valid(ra, "test");
  v.require(ra.out == rb.out, "identical reports");

  write(at("sim2.json"), R"({"p": 2, "n1": 30, "n2": 25, "M1": [[1, 0], [0, 0]], "M2": [[0, 0], [0, 1]], "sigma2": 1, "tau": 0, "seed": 2})");
  write(at("h2.json"), R"({"test_id": "2s1", "multiplicities": [1, 1]})");
  v.require(invoke({"simulate", "--config", at("sim2.json"), "--out", at("two.csv")}).code == cli::kOk, "simulate");
  valid(invoke({"test", "--data", at("two.csv"), "--config", at("h2.json"), "--no-timestamp"}), "two-sample test");
  valid(invoke({"cov-check", "--data", at("a.csv"), "--no-timestamp"}), "cov-check");
  valid(invoke({"cone-weights", "--d", "0,0,0", "--reps", "2000", "--seed", "1", "--no-timestamp"}), "cone-weights");
  write(at("cal.json"), R"({"test_id": "a0", "M0": [[1, 0], [0, 1]], "cov": {"known": {"sigma2": 1, "tau": 0}},
    "generator": {"M": [[1, 0], [0, 1]], "sigma2": 1, "tau": 0}, "n": 20, "reps": 1000, "seed": 4})");
  valid(invoke({"calibrate", "--config", at("cal.json"), "--no-timestamp"}), "calibrate");

  write(at("bad.csv"), "p=3,group\n1,2,3,4,5,x,1\n");
  write(at("short.csv"), "p=3,group\n1,2,3,1\n");
  write(at("bad.json"), "{\"test_id\": ");
  write(at("unknown.json"), R"({"test_id": "zz"})");
  write(at("few.csv"), "p=3,group\n1,0,0,1,0,1,1\n2,0,0,1,0,1,1\n");
  const std::vector<std::vector<std::string>> malformed{
      {"test", "--data", at("missing.csv"), "--config", at("h.json")},
      {"test", "--data", at("bad.csv"), "--config", at("h.json")},
      {"test", "--data", at("short.csv"), "--config", at("h.json")},
      {"test", "--data", at("a.csv"), "--config", at("bad.json")},
      {"test", "--data", at("a.csv"), "--config", at("unknown.json")},
      {"cov-check", "--data", at("few.csv")},
      {"frobnicate"},
      {}};
  int honoured = 0;
  for (const auto& args : malformed) honoured += invoke(args).code == cli::kInputError;
  v.require(honoured == static_cast<int>(malformed.size()), "exit code 2 on malformed input");
  v.detail << reports << " schema-valid reports, " << honoured << "/" << malformed.size() << " malformed inputs exit 2";
  fs::remove_all(dir);
}

}  // namespace
}  // namespace symtest

int main() {
  using namespace symtest;
  const std::pair<const char*, void (*)(Verdict&)> criteria[] = {
      {"cone mixture weights", cone_weights},
      {"exact test calibration", exact_calibration},
      {"asymptotic test calibration", asymptotic_calibration},
      {"covariance structure test", covariance_check},
      {"eigenvector variance", eigvec_variance},
      {"projection oracle", projection_oracle},
      {"tangent orthogonality", tangent_orthogonality},
      {"estimator consistency", estimator_consistency},
      {"identities", identities},
      {"cli contract", cli_contract},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("%s %2d %-28s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
