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

#include "symtest/scatter.hpp"

#include "symtest/errors.hpp"

namespace symtest {

Scatter scatter_about_mean(const SampleSet& s) {
  return scatter_about(s, 0, s.size(), sample_mean(s));
}

Scatter scatter_about(const SampleSet& s, int first, int last, const SymMat& center) {
  Scatter out;
  for (int i = first; i < last; ++i) {
    const SymMat r = s[i] - center;
    const double t = r.trace();
    out.frobenius += trace_product(r, r);
    out.trace_sq += t * t;
  }
  return out;
}

double tau_from_scatter(int p, double frobenius, double trace_sq) {
  if (p == 1) return 0.0;
  const double q = packed_size(p);
  if (!(trace_sq > 1e-300) || !(frobenius > 0.0)) {
    throw InputError("cannot estimate tau: the residual traces are all zero");
  }
  // trace_sq <= p * frobenius always; equality means residuals proportional to I.
  if (p * frobenius - trace_sq <= 1e-12 * p * frobenius) {
    throw InputError("cannot estimate tau: every residual is a multiple of the identity");
  }
  return ((q / p) * trace_sq - frobenius) / ((q - 1.0) * trace_sq);
}

}  // namespace symtest
