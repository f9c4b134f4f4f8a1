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

#include "dataset.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "symtest/errors.hpp"

namespace symtest::cli {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& text, const std::string& source, int line, int field) {
  const std::string t = trim(text);
  if (t.empty()) fail(source, line, "field " + std::to_string(field) + ": empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    fail(source, line, "field " + std::to_string(field) + ": not a number '" + t + "'");
  }
  if (!std::isfinite(v) || errno == ERANGE) {
    fail(source, line, "field " + std::to_string(field) + ": value must be finite, got '" + t + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int Dataset::count(int group) const {
  int c = 0;
  for (int g : groups) c += g == group;
  return c;
}

SampleSet Dataset::one_sample() const {
  if (count(2) > 0) throw InputError("one-sample test given a data file with group 2 rows");
  return SampleSet(observations);
}

SampleSet Dataset::two_sample(int* n1) const {
  std::vector<SymMat> ordered;
  ordered.reserve(observations.size());
  for (int g : {1, 2}) {
    for (std::size_t i = 0; i < observations.size(); ++i) {
      if (groups[i] == g) ordered.push_back(observations[i]);
    }
  }
  *n1 = count(1);
  if (*n1 == 0 || count(2) == 0) throw InputError("two-sample test needs rows in both group 1 and group 2");
  return SampleSet(std::move(ordered));
}

Dataset parse_dataset(std::istream& in, const std::string& source) {
  Dataset data;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int q = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (!have_header) {
      const std::string first = fields.empty() ? "" : trim(fields[0]);
      if (fields.size() != 2 || first.rfind("p=", 0) != 0 || trim(fields[1]) != "group") {
        fail(source, line_no, "header must be 'p=<int>,group'");
      }
      char* end = nullptr;
      const std::string digits = first.substr(2);
      const long p = std::strtol(digits.c_str(), &end, 10);
      if (digits.empty() || *end != '\0' || p < 1 || p > 1000) {
        fail(source, line_no, "header: invalid dimension '" + digits + "'");
      }
      data.p = static_cast<int>(p);
      q = packed_size(data.p);
      have_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != q + 1) {
      fail(source, line_no,
           "expected " + std::to_string(q + 1) + " fields (" + std::to_string(q) +
               " matrix entries and a group label), got " + std::to_string(fields.size()));
    }
    std::vector<double> upper(q);
    for (int k = 0; k < q; ++k) upper[k] = parse_number(fields[k], source, line_no, k + 1);
    const std::string g = trim(fields[q]);
    if (g != "1" && g != "2") {
      fail(source, line_no, "field " + std::to_string(q + 1) + ": group must be 1 or 2, got '" + g + "'");
    }
    data.observations.push_back(SymMat::from_packed(data.p, std::move(upper)));
    data.groups.push_back(g == "1" ? 1 : 2);
  }
  if (!have_header) throw InputError(source + ": empty file (missing 'p=<int>,group' header)");
  if (data.observations.empty()) throw InputError(source + ": no observations");
  return data;
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open data file '" + path + "'");
  return parse_dataset(in, path);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << "p=" << data.p << ",group\n";
  for (std::size_t i = 0; i < data.observations.size(); ++i) {
    for (double v : data.observations[i].packed()) out << format_double(v) << ',';
    out << data.groups[i] << '\n';
  }
}

void write_dataset_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_dataset(out, data);
  out.flush();
  if (!out) throw InputError("error while writing '" + path + "'");
}

}  // namespace symtest::cli
