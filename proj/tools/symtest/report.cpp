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

#include "report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "dataset.hpp"

namespace symtest::cli {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json fit_json(const FitResult& f) {
  Json j;
  j["M_hat"] = matrix_json(f.m_hat);
  j["sigma2_hat"] = number_or_null(f.sigma2_hat);
  j["tau_hat"] = number_or_null(f.tau_hat);
  if (f.face_dim) j["face_dim"] = *f.face_dim;
  return j;
}

Json fit2_json(const FitResult2& f) {
  Json j;
  j["M1_hat"] = matrix_json(f.m1_hat);
  j["M2_hat"] = matrix_json(f.m2_hat);
  j["sigma2_hat"] = number_or_null(f.sigma2_hat);
  j["tau_hat"] = number_or_null(f.tau_hat);
  return j;
}

Json header(const char* kind, const ReportMeta& meta) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["tool"] = {{"name", "symtest"}, {"version", kToolVersion}};
  if (meta.seed) {
    j["seed"] = *meta.seed;
  } else {
    j["seed"] = nullptr;
  }
  if (meta.timestamp) j["timestamp"] = utc_timestamp();
  return j;
}

void dump_value(const Json& j, std::ostringstream& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner_pad(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << inner_pad << Json(key).dump() << ": ";
        dump_value(value, out, indent + 2);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested arrays break.
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          dump_value(j[i], out, indent + 2);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner_pad;
        dump_value(j[i], out, indent + 2);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        return;
      }
      std::string s = format_double(v);
      // Keep floats recognisable as floats (e.g. 1 -> 1.0).
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out << s;
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

Json matrix_json(const SymMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json dist_json(const RefDist& dist) {
  Json j;
  j["type"] = type_name(dist);
  std::visit(Overloaded{
                 [&](const ChiSq& d) { j["df"] = d.df; },
                 [&](const ChiSqApprox& d) { j["df"] = d.df; },
                 [&](const FDist& d) {
                   j["df1"] = d.df1;
                   j["df2"] = d.df2;
                 },
                 [&](const ChiSqMix& d) {
                   j["weights"] = d.weights;
                   j["dfs"] = d.dfs;
                 },
             },
             dist);
  return j;
}

Json test_report(const TestResult& r, const ReportMeta& meta, const std::optional<ConeWeights>& weights) {
  Json j = header("test", meta);
  j["test_id"] = to_string(r.test_id);
  j["n"] = r.n;
  if (is_two_sample(r.test_id)) {
    j["n1"] = r.n1;
    j["n2"] = r.n2;
  }
  j["statistic"] = r.statistic;
  j["distribution"] = dist_json(r.dist);
  j["p_value"] = r.p_value;
  j["cov"] = {{"mode", r.cov_estimated ? "estimated" : "known"},
              {"sigma2", number_or_null(r.cov.sigma2)},
              {"tau", number_or_null(r.cov.tau)}};
  Json mle = Json::object();
  if (r.fit_null) mle["null"] = fit_json(*r.fit_null);
  if (r.fit_alt) mle["alternative"] = fit_json(*r.fit_alt);
  if (r.fit2_null) mle["null"] = fit2_json(*r.fit2_null);
  if (r.fit2_alt) mle["alternative"] = fit2_json(*r.fit2_alt);
  j["mle"] = mle;
  if (weights) {
    j["cone_weights"] = {{"source", "simulated"},
                         {"reps", weights->reps},
                         {"d_true", weights->d_true},
                         {"weights", weights->weights}};
  }
  j["log_transform"] = meta.log_transform;
  Json warnings = Json::array();
  for (const std::string& w : r.warnings) warnings.push_back(w);
  j["warnings"] = warnings;
  return j;
}

Json calibration_report(const CalibrationReport& r, const ReportMeta& meta) {
  Json j = header("calibration", meta);
  j["test_id"] = to_string(r.test_id);
  j["reps"] = r.reps;
  j["n"] = r.n;
  if (is_two_sample(r.test_id)) {
    j["n1"] = r.n1;
    j["n2"] = r.n2;
  }
  j["distribution"] = dist_json(r.dist);
  Json q = Json::array();
  for (std::size_t i = 0; i < CalibrationReport::kProbs.size(); ++i) {
    q.push_back({{"prob", CalibrationReport::kProbs[i]},
                 {"empirical", r.empirical_quantiles[i]},
                 {"theoretical", r.theoretical_quantiles[i]}});
  }
  j["quantiles"] = q;
  j["ks_distance"] = r.ks;
  j["alpha"] = 0.05;
  j["rejection_rate"] = r.rejection_rate;
  return j;
}

Json cone_weights_report(const ConeWeights& w, const ReportMeta& meta) {
  Json j = header("cone_weights", meta);
  j["reps"] = w.reps;
  j["d_true"] = w.d_true;
  const int p = static_cast<int>(w.d_true.size());
  const int q = packed_size(p);
  Json comps = Json::array();
  for (int k = 1; k <= p; ++k) {
    comps.push_back({{"face_dim", k}, {"df", q - k}, {"weight", w.weights[k - 1]}, {"count", w.counts[k - 1]}});
  }
  j["components"] = comps;
  j["weights"] = w.weights;
  return j;
}

std::string dump(const Json& j) {
  std::ostringstream out;
  dump_value(j, out, 0);
  out << "\n";
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace symtest::cli
