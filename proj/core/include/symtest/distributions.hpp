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

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace symtest {

/// Chi-squared with `df` degrees of freedom (df > 0).
struct ChiSq {
  double df = 1.0;
};
/// sum_i weights[i] * chi^2(dfs[i]); a df of 0 is a point mass at 0.
struct ChiSqMix {
  std::vector<double> weights;
  std::vector<double> dfs;
};
/// Snedecor F(df1, df2).
struct FDist {
  double df1 = 1.0;
  double df2 = 1.0;
};
/// Chi-squared that holds only asymptotically (curved sets, plug-in
/// covariance). Numerically identical to ChiSq.
struct ChiSqApprox {
  double df = 1.0;
};

using RefDist = std::variant<ChiSq, ChiSqMix, FDist, ChiSqApprox>;

/// Throws InputError unless the parameters are valid (weights >= 0 summing
/// to 1 within 1e-12, df >= 0 in mixtures and > 0 elsewhere).
void validate(const RefDist& dist);

/// "chisq", "chisq_mix", "f" or "chisq_approx".
std::string type_name(const RefDist& dist);

/// P(T <= t).
double cdf(const RefDist& dist, double t);

/// Upper tail P(T >= t), in [0, 1]. For a mixture, a df-0 component
/// contributes 1 at t <= 0 and 0 for t > 0.
double pvalue(const RefDist& dist, double t);

/// Smallest t with cdf(t) >= prob, by bracketing and bisection; 0 < prob < 1.
double quantile(const RefDist& dist, double prob);

/// Chi-squared upper tail Q(df/2, t/2).
double chisq_sf(double df, double t);
/// F upper tail via the incomplete beta.
double f_sf(double df1, double df2, double t);

/// Kolmogorov-Smirnov distance sup_t |F_n(t) - F(t)| between the empirical
/// distribution of `samples` and `dist`.
double ks_distance(std::span<const double> samples, const RefDist& dist);

}  // namespace symtest
