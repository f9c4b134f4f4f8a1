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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "symtest/errors.hpp"

namespace symtest::cli {
namespace {

[[noreturn]] void bad(const std::string& key, const std::string& msg) {
  throw InputError("config: '" + key + "': " + msg);
}

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(key, "must be finite");
  return x;
}

long long integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) bad(key, "expected an integer");
  return v.get<long long>();
}

int positive_int(const Json& v, const std::string& key) {
  const long long x = integer(v, key);
  if (x < 1 || x > std::numeric_limits<int>::max()) bad(key, "must be a positive integer");
  return static_cast<int>(x);
}

std::uint64_t seed_value(const Json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const long long x = integer(v, key);
  if (x < 0) bad(key, "must be non-negative");
  return static_cast<std::uint64_t>(x);
}

std::vector<double> vector_of(const Json& v, const std::string& key) {
  if (!v.is_array()) bad(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::MatrixXd matrix_of(const Json& v, const std::string& key, int p) {
  if (!v.is_array() || v.empty()) bad(key, "expected a p x p nested array");
  const int rows = static_cast<int>(v.size());
  if (p > 0 && rows != p) bad(key, "expected " + std::to_string(p) + " rows, got " + std::to_string(rows));
  Eigen::MatrixXd m(rows, rows);
  for (int i = 0; i < rows; ++i) {
    const std::string row_key = key + "[" + std::to_string(i) + "]";
    const std::vector<double> row = vector_of(v[i], row_key);
    if (static_cast<int>(row.size()) != rows) bad(row_key, "expected " + std::to_string(rows) + " entries");
    for (int j = 0; j < rows; ++j) m(i, j) = row[j];
  }
  return m;
}

SymMat symmetric_of(const Json& v, const std::string& key, int p) {
  try {
    return SymMat::from_dense(matrix_of(v, key, p));
  } catch (const InputError& e) {
    bad(key, e.what());
  }
}

Multiplicities mult_of(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) bad(key, "expected a non-empty array of positive integers");
  std::vector<int> m;
  for (std::size_t i = 0; i < v.size(); ++i) m.push_back(positive_int(v[i], key + "[" + std::to_string(i) + "]"));
  return Multiplicities(std::move(m));
}

CovChoice cov_of(const Json& j) {
  if (!j.contains("cov")) return std::nullopt;
  const Json& c = j.at("cov");
  if (!c.is_object()) bad("cov", "expected {\"known\": {...}} or {\"estimate\": true}");
  if (c.contains("known")) {
    const Json& k = c.at("known");
    if (!k.is_object() || !k.contains("sigma2")) bad("cov.known", "needs sigma2 (and optionally tau)");
    CovParams cov{number(k.at("sigma2"), "cov.known.sigma2"),
                  k.contains("tau") ? number(k.at("tau"), "cov.known.tau") : 0.0};
    return cov;
  }
  if (c.contains("estimate")) {
    if (!c.at("estimate").is_boolean() || !c.at("estimate").get<bool>()) bad("cov.estimate", "must be true");
    return std::nullopt;
  }
  bad("cov", "expected {\"known\": {...}} or {\"estimate\": true}");
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError("config: " + where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError("config: unknown key '" + key + "' in " + where);
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

std::optional<int> infer_dimension(const Json& j) {
  if (!j.is_object()) return std::nullopt;
  if (j.contains("p") && j.at("p").is_number_integer()) return j.at("p").get<int>();
  for (const char* key : {"M0", "U0", "M", "M1"}) {
    if (j.contains(key) && j.at(key).is_array()) return static_cast<int>(j.at(key).size());
  }
  if (j.contains("D0") && j.at("D0").is_array()) return static_cast<int>(j.at("D0").size());
  if (j.contains("generator")) return infer_dimension(j.at("generator"));
  if (j.contains("multiplicities") && j.at("multiplicities").is_array()) {
    int p = 0;
    for (const auto& m : j.at("multiplicities")) {
      if (m.is_number_integer()) p += m.get<int>();
    }
    return p;
  }
  return std::nullopt;
}

HypothesisConfig parse_hypothesis(const Json& j, int p) {
  check_keys(j,
             {"test_id", "M0", "U0", "D0", "multiplicities", "cov", "cone_weights", "seed", "reps", "threads",
              "generator", "n", "n1"},
             "the hypothesis config");
  if (!j.contains("test_id") || !j.at("test_id").is_string()) bad("test_id", "required string");
  HypothesisConfig h;
  h.spec.id = test_id_from_string(j.at("test_id").get<std::string>());
  if (j.contains("M0")) h.spec.m0 = symmetric_of(j.at("M0"), "M0", p);
  if (j.contains("U0")) h.spec.u0 = matrix_of(j.at("U0"), "U0", p);
  if (j.contains("D0")) {
    h.spec.d0 = vector_of(j.at("D0"), "D0");
    if (static_cast<int>(h.spec.d0->size()) != p) bad("D0", "expected " + std::to_string(p) + " entries");
  }
  if (j.contains("multiplicities")) {
    h.spec.mult = mult_of(j.at("multiplicities"), "multiplicities");
    if (h.spec.mult->total() != p) bad("multiplicities", "must sum to p = " + std::to_string(p));
  }
  h.spec.cov = cov_of(j);
  if (j.contains("cone_weights")) h.spec.cone_weights = vector_of(j.at("cone_weights"), "cone_weights");
  if (j.contains("seed")) h.seed = seed_value(j.at("seed"), "seed");
  if (j.contains("reps")) h.reps = positive_int(j.at("reps"), "reps");
  if (j.contains("threads")) h.threads = positive_int(j.at("threads"), "threads");
  return h;
}

SimulateConfig parse_simulate(const Json& j) {
  check_keys(j, {"p", "n", "n1", "n2", "M", "M1", "M2", "sigma2", "tau", "seed"}, "the simulate config");
  SimulateConfig c;
  if (!j.contains("p")) bad("p", "required");
  c.p = positive_int(j.at("p"), "p");
  if (j.contains("n")) {
    if (j.contains("n1") || j.contains("n2")) bad("n", "give either n or n1/n2");
    c.n1 = positive_int(j.at("n"), "n");
  } else {
    if (!j.contains("n1") || !j.contains("n2")) bad("n", "required (or n1 and n2 for two groups)");
    c.n1 = positive_int(j.at("n1"), "n1");
    c.n2 = positive_int(j.at("n2"), "n2");
  }
  const bool two = c.n2 > 0;
  if (two) {
    if (j.contains("M")) {
      c.mean1 = c.mean2 = symmetric_of(j.at("M"), "M", c.p);
    } else {
      if (!j.contains("M1") || !j.contains("M2")) bad("M1", "two-group simulation needs M (shared) or M1 and M2");
      c.mean1 = symmetric_of(j.at("M1"), "M1", c.p);
      c.mean2 = symmetric_of(j.at("M2"), "M2", c.p);
    }
  } else {
    if (j.contains("M1") || j.contains("M2")) bad("M1", "one-group simulation takes M");
    c.mean1 = j.contains("M") ? symmetric_of(j.at("M"), "M", c.p) : SymMat(c.p);
  }
  c.cov.sigma2 = j.contains("sigma2") ? number(j.at("sigma2"), "sigma2") : 1.0;
  c.cov.tau = j.contains("tau") ? number(j.at("tau"), "tau") : 0.0;
  c.cov.validate(c.p);
  if (j.contains("seed")) c.seed = seed_value(j.at("seed"), "seed");
  return c;
}

CalibrateConfig parse_calibrate(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  if (!j.contains("generator") || !j.at("generator").is_object()) bad("generator", "required object");
  const Json& g = j.at("generator");
  check_keys(g, {"M", "M2", "sigma2", "tau"}, "generator");
  if (!g.contains("M")) bad("generator.M", "required");
  CalibrateConfig c;
  c.generator.mean = symmetric_of(g.at("M"), "generator.M", 0);
  const int p = c.generator.mean.dim();
  if (g.contains("M2")) c.generator.mean2 = symmetric_of(g.at("M2"), "generator.M2", p);
  c.generator.cov.sigma2 = g.contains("sigma2") ? number(g.at("sigma2"), "generator.sigma2") : 1.0;
  c.generator.cov.tau = g.contains("tau") ? number(g.at("tau"), "generator.tau") : 0.0;
  c.generator.cov.validate(p);
  c.hypothesis = parse_hypothesis(j, p);
  if (!j.contains("n")) bad("n", "required");
  c.n = positive_int(j.at("n"), "n");
  if (j.contains("n1")) c.n1 = positive_int(j.at("n1"), "n1");
  return c;
}

ConeWeightsConfig parse_cone_weights(const Json& j) {
  check_keys(j, {"d_true", "multiplicities", "reps", "seed"}, "the cone-weights config");
  ConeWeightsConfig c;
  if (j.contains("d_true")) c.d_true = vector_of(j.at("d_true"), "d_true");
  if (j.contains("multiplicities")) c.mult = mult_of(j.at("multiplicities"), "multiplicities");
  if (c.d_true.has_value() == c.mult.has_value()) bad("d_true", "give exactly one of d_true or multiplicities");
  if (c.d_true && c.d_true->empty()) bad("d_true", "must not be empty");
  if (j.contains("reps")) c.reps = positive_int(j.at("reps"), "reps");
  if (j.contains("seed")) c.seed = seed_value(j.at("seed"), "seed");
  return c;
}

}  // namespace symtest::cli
