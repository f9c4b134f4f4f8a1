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

#include "config.hpp"
#include "symtest/calibrate.hpp"
#include "symtest/lrt.hpp"

namespace symtest::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ReportMeta {
  std::optional<std::uint64_t> seed;
  bool timestamp = true;
  bool log_transform = false;
};

Json matrix_json(const SymMat& m);
Json dist_json(const RefDist& dist);

/// Report for `test` and `cov-check`.
Json test_report(const TestResult& r, const ReportMeta& meta, const std::optional<ConeWeights>& weights);
Json calibration_report(const CalibrationReport& r, const ReportMeta& meta);
Json cone_weights_report(const ConeWeights& w, const ReportMeta& meta);

/// Pretty-prints with two-space indentation and every floating-point number
/// written as %.17g; NaN and infinities become null.
std::string dump(const Json& j);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace symtest::cli
