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

#include "symtest/pava.hpp"

#include <algorithm>

namespace symtest {

IsotonicFit pava_nonincreasing(std::span<const double> y) {
  struct Block {
    double sum;
    int count;
    double mean() const { return sum / count; }
  };
  std::vector<Block> stack;
  stack.reserve(y.size());
  for (double v : y) {
    stack.push_back({v, 1});
    while (stack.size() > 1) {
      const Block& right = stack.back();
      const Block& left = stack[stack.size() - 2];
      if (!(left.mean() < right.mean())) break;
      const Block merged{left.sum + right.sum, left.count + right.count};
      stack.pop_back();
      stack.back() = merged;
    }
  }

  IsotonicFit out;
  out.fitted.reserve(y.size());
  for (const Block& b : stack) {
    const double m = b.mean();
    if (out.fitted.empty() || out.fitted.back() != m) ++out.face_dim;
    out.fitted.insert(out.fitted.end(), b.count, m);
  }
  return out;
}

}  // namespace symtest
