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

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "symtest/matnormal.hpp"
#include "symtest/symmat.hpp"

namespace symtest::cli {

/// Observations read from, or written to, the CSV data format:
///
///   p=<int>,group
///   X11,X12,...,X1p,X22,...,Xpp,<1|2>
///
/// one row per observation with the raw upper triangle in row-major order.
struct Dataset {
  int p = 0;
  std::vector<SymMat> observations;
  std::vector<int> groups;

  int count(int group) const;
  /// All observations (groups ignored). InputError if any row is in group 2.
  SampleSet one_sample() const;
  /// Group 1 rows followed by group 2 rows (each in file order); n1 is the
  /// number of group-1 rows.
  SampleSet two_sample(int* n1) const;
};

/// Parses the CSV format. `source` names the input in error messages, which
/// have the form "<source>:<line>: field <k>: ...". Throws InputError.
Dataset parse_dataset(std::istream& in, const std::string& source);
Dataset read_dataset(const std::string& path);

/// Numbers are written with 17 significant digits, so reading the file back
/// reproduces every double exactly.
void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset_file(const std::string& path, const Dataset& data);

/// %.17g formatting.
std::string format_double(double v);

}  // namespace symtest::cli
