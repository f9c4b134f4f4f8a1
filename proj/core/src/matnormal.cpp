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

#include "symtest/matnormal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "symtest/errors.hpp"
#include "symtest/rng.hpp"

namespace symtest {

SampleSet::SampleSet(std::vector<SymMat> obs) : obs_(std::move(obs)) {
  if (obs_.empty()) throw InputError("sample set must contain at least one observation");
  const int p = obs_.front().dim();
  if (p < 1) throw InputError("observations must have dimension >= 1");
  for (std::size_t i = 1; i < obs_.size(); ++i) {
    if (obs_[i].dim() != p) {
      throw InputError("observation " + std::to_string(i + 1) + " has dimension " +
                       std::to_string(obs_[i].dim()) + ", expected " + std::to_string(p));
    }
  }
}

SampleSet SampleSet::slice(int first, int last) const {
  if (first < 0 || last > size() || first >= last) throw InputError("invalid sample slice");
  return SampleSet(std::vector<SymMat>(obs_.begin() + first, obs_.begin() + last));
}

SampleSet SampleSet::concat(const SampleSet& a, const SampleSet& b) {
  std::vector<SymMat> all = a.obs_;
  all.insert(all.end(), b.obs_.begin(), b.obs_.end());
  return SampleSet(std::move(all));
}

Eigen::MatrixXd build_sigma(int p, const CovParams& cov) {
  cov.validate(p);
  const int q = packed_size(p);
  const double c = cov.c(p);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(q, q);
  sigma.topLeftCorner(p, p).setConstant(cov.sigma2 * c);
  sigma.topLeftCorner(p, p).diagonal().array() += cov.sigma2;
  sigma.bottomRightCorner(q - p, q - p).diagonal().setConstant(cov.sigma2);
  return sigma;
}

double log_density(const SymMat& y, const SymMat& mean, const CovParams& cov) {
  const int p = y.dim();
  cov.validate(p);
  const double q = packed_size(p);
  return 0.5 * std::log(1.0 - p * cov.tau) - 0.5 * q * std::log(2.0 * std::numbers::pi) -
         0.5 * q * std::log(cov.sigma2) - 0.5 * norm_sq(y - mean, cov);
}

namespace {

struct NoiseShape {
  int p;
  double sigma;
  double c;
  Eigen::MatrixXd diag_chol;  // used only when c < 0
};

SymMat draw_one(const SymMat& mean, const NoiseShape& shape, std::uint64_t seed,
                std::uint64_t stream) {
  NormalStream rng(seed, stream);
  const int p = shape.p;
  SymMat y = mean;
  if (shape.c >= 0.0) {
    const double shared = std::sqrt(shape.c) * rng.normal();
    for (int i = 0; i < p; ++i) y.set(i, i, mean(i, i) + shape.sigma * (shared + rng.normal()));
  } else {
    Eigen::VectorXd g(p);
    for (int i = 0; i < p; ++i) g(i) = rng.normal();
    const Eigen::VectorXd d = shape.diag_chol * g;
    for (int i = 0; i < p; ++i) y.set(i, i, mean(i, i) + shape.sigma * d(i));
  }
  const double off_scale = shape.sigma / std::numbers::sqrt2;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) y.set(i, j, mean(i, j) + off_scale * rng.normal());
  }
  return y;
}

}  // namespace

SampleSet sample(int n, const SymMat& mean, const CovParams& cov, std::uint64_t seed,
                 std::uint64_t first_stream, int threads) {
  if (n < 1) throw InputError("sample size must be >= 1");
  const int p = mean.dim();
  cov.validate(p);
  NoiseShape shape{p, std::sqrt(cov.sigma2), cov.c(p), {}};
  if (shape.c < 0.0) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Constant(p, p, shape.c);
    block.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(block);
    if (llt.info() != Eigen::Success) throw InputError("diagonal covariance is not positive definite");
    shape.diag_chol = llt.matrixL();
  }

  std::vector<SymMat> obs(n);
  const int workers = std::clamp(threads, 1, n);
  auto fill = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) obs[i] = draw_one(mean, shape, seed, first_stream + i);
  };
  if (workers == 1) {
    fill(0, n);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(fill, lo, hi);
    }
  }
  return SampleSet(std::move(obs));
}

Eigen::MatrixXd empirical_sigma(const SampleSet& s) {
  const int p = s.dim();
  const int q = packed_size(p);
  if (s.size() <= q) {
    throw InputError("empirical covariance needs n > q = " + std::to_string(q) + " observations, got " +
                     std::to_string(s.size()));
  }
  const SymMat mean = sample_mean(s);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(q, q);
  for (const SymMat& y : s) {
    const Eigen::VectorXd r = vecd(y - mean);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(r);
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  return acc / static_cast<double>(s.size());
}

SymMat sample_mean(const SampleSet& s) {
  if (s.size() == 0) throw InputError("sample set is empty");
  SymMat acc(s.dim());
  for (const SymMat& y : s) acc += y;
  return acc * (1.0 / s.size());
}

void check_split(const SampleSet& s, int n1) {
  if (n1 < 1 || n1 >= s.size()) {
    throw InputError("two-sample split needs 1 <= n1 < n (n1 = " + std::to_string(n1) +
                     ", n = " + std::to_string(s.size()) + ")");
  }
}

GroupMeans group_means(const SampleSet& s, int n1) {
  check_split(s, n1);
  const int n = s.size();
  SymMat sum1(s.dim());
  SymMat sum2(s.dim());
  for (int i = 0; i < n1; ++i) sum1 += s[i];
  for (int i = n1; i < n; ++i) sum2 += s[i];
  GroupMeans g{sum1 * (1.0 / n1), sum2 * (1.0 / (n - n1)), (sum1 + sum2) * (1.0 / n)};
  return g;
}

}  // namespace symtest
