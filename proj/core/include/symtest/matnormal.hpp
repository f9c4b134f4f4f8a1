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

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "symtest/symmat.hpp"

namespace symtest {

/// An ordered collection of same-dimension symmetric matrices.
class SampleSet {
 public:
  SampleSet() = default;
  /// Throws InputError if `obs` is empty or dimensions differ.
  explicit SampleSet(std::vector<SymMat> obs);

  int size() const { return static_cast<int>(obs_.size()); }
  int dim() const { return obs_.empty() ? 0 : obs_.front().dim(); }
  const SymMat& operator[](int i) const { return obs_[i]; }
  const std::vector<SymMat>& observations() const { return obs_; }
  auto begin() const { return obs_.begin(); }
  auto end() const { return obs_.end(); }

  /// Observations [first, last) as a new set.
  SampleSet slice(int first, int last) const;
  /// Concatenation; dimensions must match.
  static SampleSet concat(const SampleSet& a, const SampleSet& b);

 private:
  std::vector<SymMat> obs_;
};

/// Covariance of vecd(Z) for the orthogonally invariant model:
/// sigma^2 (I_p + c 1 1') on the diagonal coordinates and sigma^2 I on the
/// sqrt(2)-scaled off-diagonal ones (raw off-diagonal entries have variance
/// sigma^2 / 2), zero in between.
Eigen::MatrixXd build_sigma(int p, const CovParams& cov);

/// Log of the N_pp(M, sigma^2, tau) density at Y.
double log_density(const SymMat& y, const SymMat& mean, const CovParams& cov);

/// Draws n i.i.d. observations from N_pp(mean, sigma^2, tau).
///
/// Observation i is generated from Philox substream (seed, first_stream + i),
/// so results do not depend on `threads` or on how a data set is split.
/// For c >= 0, Z = sigma (sqrt(c) w I + W) with W from the GOE; for c < 0 the
/// diagonal is drawn through a Cholesky factor of sigma^2 (I + c 1 1') and the
/// off-diagonal entries independently with variance sigma^2 / 2.
SampleSet sample(int n, const SymMat& mean, const CovParams& cov, std::uint64_t seed,
                 std::uint64_t first_stream = 0, int threads = 1);

/// Empirical vecd covariance (1/n) sum vecd(Y_i - Ybar) vecd(Y_i - Ybar)'.
/// Requires n > q.
Eigen::MatrixXd empirical_sigma(const SampleSet& s);

SymMat sample_mean(const SampleSet& s);

struct GroupMeans {
  SymMat mean1;
  SymMat mean2;
  /// (n1 Ybar1 + n2 Ybar2) / n
  SymMat pooled;
};

/// Group means for a set whose first n1 observations form group 1.
GroupMeans group_means(const SampleSet& s, int n1);

/// Throws InputError unless 1 <= n1 < s.size().
void check_split(const SampleSet& s, int n1);

}  // namespace symtest
