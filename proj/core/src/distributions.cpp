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

#include "symtest/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symtest/errors.hpp"
#include "symtest/special_functions.hpp"

namespace symtest {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_df(double df, const char* what) {
  if (!(df > 0.0) || !std::isfinite(df)) throw InputError(std::string(what) + " must be positive");
}

double chisq_cdf(double df, double t) {
  if (t <= 0.0) return 0.0;
  return gamma_p(0.5 * df, 0.5 * t);
}

double f_cdf(double df1, double df2, double t) {
  if (t <= 0.0) return 0.0;
  return beta_inc(0.5 * df1, 0.5 * df2, df1 * t / (df1 * t + df2));
}

}  // namespace

void validate(const RefDist& dist) {
  std::visit(Overloaded{
                 [](const ChiSq& d) { check_df(d.df, "chi-squared df"); },
                 [](const ChiSqApprox& d) { check_df(d.df, "chi-squared df"); },
                 [](const FDist& d) {
                   check_df(d.df1, "F numerator df");
                   check_df(d.df2, "F denominator df");
                 },
                 [](const ChiSqMix& d) {
                   if (d.weights.empty() || d.weights.size() != d.dfs.size()) {
                     throw InputError("mixture needs matching, non-empty weight and df lists");
                   }
                   double total = 0.0;
                   for (std::size_t i = 0; i < d.weights.size(); ++i) {
                     if (!(d.weights[i] >= 0.0)) throw InputError("mixture weights must be >= 0");
                     if (!(d.dfs[i] >= 0.0) || !std::isfinite(d.dfs[i])) {
                       throw InputError("mixture df must be >= 0");
                     }
                     total += d.weights[i];
                   }
                   if (std::abs(total - 1.0) > 1e-12) throw InputError("mixture weights must sum to 1");
                 },
             },
             dist);
}

std::string type_name(const RefDist& dist) {
  return std::visit(Overloaded{
                        [](const ChiSq&) { return std::string("chisq"); },
                        [](const ChiSqMix&) { return std::string("chisq_mix"); },
                        [](const FDist&) { return std::string("f"); },
                        [](const ChiSqApprox&) { return std::string("chisq_approx"); },
                    },
                    dist);
}

double chisq_sf(double df, double t) {
  check_df(df, "chi-squared df");
  if (t <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * t);
}

double f_sf(double df1, double df2, double t) {
  check_df(df1, "F numerator df");
  check_df(df2, "F denominator df");
  if (t <= 0.0) return 1.0;
  return beta_inc(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * t));
}

double cdf(const RefDist& dist, double t) {
  validate(dist);
  return std::visit(Overloaded{
                        [t](const ChiSq& d) { return chisq_cdf(d.df, t); },
                        [t](const ChiSqApprox& d) { return chisq_cdf(d.df, t); },
                        [t](const FDist& d) { return f_cdf(d.df1, d.df2, t); },
                        [t](const ChiSqMix& d) {
                          if (t < 0.0) return 0.0;
                          double acc = 0.0;
                          for (std::size_t i = 0; i < d.weights.size(); ++i) {
                            acc += d.weights[i] * (d.dfs[i] == 0.0 ? 1.0 : chisq_cdf(d.dfs[i], t));
                          }
                          return std::min(acc, 1.0);
                        },
                    },
                    dist);
}

double pvalue(const RefDist& dist, double t) {
  if (std::isnan(t)) throw InputError("statistic is NaN");
  validate(dist);
  const double p = std::visit(
      Overloaded{
          [t](const ChiSq& d) { return chisq_sf(d.df, t); },
          [t](const ChiSqApprox& d) { return chisq_sf(d.df, t); },
          [t](const FDist& d) { return f_sf(d.df1, d.df2, t); },
          [t](const ChiSqMix& d) {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.weights.size(); ++i) {
              const double tail = d.dfs[i] == 0.0 ? (t <= 0.0 ? 1.0 : 0.0) : chisq_sf(d.dfs[i], t);
              acc += d.weights[i] * tail;
            }
            return acc;
          },
      },
      dist);
  return std::clamp(p, 0.0, 1.0);
}

double quantile(const RefDist& dist, double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw InputError("quantile probability must be in (0, 1)");
  validate(dist);
  if (cdf(dist, 0.0) >= prob) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (cdf(dist, hi) < prob) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("quantile bracket overflow");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(dist, mid) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double ks_distance(std::span<const double> samples, const RefDist& dist) {
  if (samples.empty()) throw InputError("KS distance needs at least one sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Mixtures with a df-0 atom: the left limit at 0 is 0, not cdf(0).
    const double f_right = cdf(dist, x[i]);
    const double f_left = x[i] <= 0.0 ? 0.0 : f_right;
    d = std::max({d, (i + 1) / n - f_right, f_left - i / n});
  }
  return d;
}

}  // namespace symtest
