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
#include <vector>

namespace symtest {

struct IsotonicFit {
  /// Least-squares projection of y onto {d_1 >= d_2 >= ... >= d_p}.
  std::vector<double> fitted;
  /// Number of distinct values in `fitted` (the dimension of the face of
  /// the order cone that y was projected onto).
  int face_dim = 0;
};

/// Pool-adjacent-violators with equal weights. Adjacent blocks are pooled on
/// strict violation (left mean < right mean); pooled entries share a single
/// computed mean, so face_dim counts exact-equality runs.
IsotonicFit pava_nonincreasing(std::span<const double> y);

}  // namespace symtest
