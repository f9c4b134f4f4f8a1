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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symtest/calibrate.hpp"
#include "symtest/lrt.hpp"

namespace symtest::cli {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; InputError with the parser message on failure.
Json read_json_file(const std::string& path);

/// Hypothesis configuration:
///   test_id        a0 | a1 | a2 | c2 | s1 | s2 | s3 | 2a0 | 2s1 | 2s2 | cov-check
///   M0, U0         p x p nested arrays
///   D0             array of p numbers
///   multiplicities array of positive integers summing to p
///   cov            {"known": {"sigma2": s, "tau": t}} or {"estimate": true}
///   cone_weights   array of p weights by face dimension 1..p (c2 only)
///   seed, reps     integers (calibration, on-the-fly cone weights)
struct HypothesisConfig {
  TestSpec spec;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> threads;
};

/// `p` is the data dimension; matrices and lists are checked against it.
HypothesisConfig parse_hypothesis(const Json& j, int p);

/// Dimension implied by a config (from M0, U0, D0, multiplicities, p or the
/// generator mean), or nullopt.
std::optional<int> infer_dimension(const Json& j);

/// Simulation configuration:
///   p, n            or p, n1, n2 for two groups
///   M               p x p mean (one group), or M1 and M2
///   sigma2, tau     covariance parameters (default 1, 0)
///   seed            integer
struct SimulateConfig {
  int p = 0;
  int n1 = 0;
  int n2 = 0;  // 0 for one-sample files
  SymMat mean1;
  SymMat mean2;
  CovParams cov;
  std::optional<std::uint64_t> seed;
};
SimulateConfig parse_simulate(const Json& j);

/// Calibration configuration: a hypothesis config plus
///   generator      {"M": ..., "M2": ..., "sigma2": s, "tau": t}
///   n, n1          sample sizes
struct CalibrateConfig {
  HypothesisConfig hypothesis;
  GeneratorSpec generator;
  int n = 0;
  int n1 = 0;
};
CalibrateConfig parse_calibrate(const Json& j);

/// Cone-weight configuration: {"d_true": [...]} or {"multiplicities": [...]}
/// plus optional reps and seed.
struct ConeWeightsConfig {
  std::optional<std::vector<double>> d_true;
  std::optional<Multiplicities> mult;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
};
ConeWeightsConfig parse_cone_weights(const Json& j);

}  // namespace symtest::cli
