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

#include "symtest/matnormal.hpp"

namespace symtest {

/// Sums of squares of the residuals R_i = Y_i - Ybar.
struct Scatter {
  double frobenius = 0.0;  // sum tr(R_i^2)
  double trace_sq = 0.0;   // sum (tr R_i)^2
};

Scatter scatter_about_mean(const SampleSet& s);

/// Same sums for observations [first, last) taken about `center`.
Scatter scatter_about(const SampleSet& s, int first, int last, const SymMat& center);

/// Closed-form tau maximising the profile likelihood given the total
/// Frobenius and squared-trace sums of the residuals:
///   tau = ((q/p) trace_sq - frobenius) / ((q - 1) trace_sq).
/// For p = 1 tau is not identifiable and 0 is returned. Throws InputError
/// when trace_sq vanishes or when every residual is a multiple of I
/// (which would give tau = 1/p).
double tau_from_scatter(int p, double frobenius, double trace_sq);

}  // namespace symtest
