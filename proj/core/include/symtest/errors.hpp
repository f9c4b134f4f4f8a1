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

#include <stdexcept>
#include <string>

namespace symtest {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something invalid: bad dimensions, out-of-range
// parameters, too few observations, malformed sets.
class InputError : public Error {
 public:
  using Error::Error;
};

// A numerical routine could not produce a trustworthy answer (Jacobi did not
// converge, a matrix that must be positive definite is not).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An internal invariant was violated, e.g. a likelihood-ratio statistic came
// out negative beyond rounding.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace symtest
