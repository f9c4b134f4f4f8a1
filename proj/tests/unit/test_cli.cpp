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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "schema_check.hpp"
#include "symtest/matnormal.hpp"

namespace symtest::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("symtest_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string simulate_one(const std::string& name, int seed = 7) {
    write(path("sim.json"),
          R"({"p": 3, "n": 40, "M": [[2, 0, 0], [0, 1, 0], [0, 0, 1]], "sigma2": 1.0, "tau": 0.1, "seed": )" +
              std::to_string(seed) + "}");
    const Outcome r = invoke({"simulate", "--config", path("sim.json"), "--out", path(name)});
    EXPECT_EQ(r.code, kOk) << r.err;
    return path(name);
  }

  fs::path dir_;
};

const testing::SchemaCheck& schema() {
  static const testing::SchemaCheck s = testing::SchemaCheck::from_file(SYMTEST_SCHEMA_PATH);
  return s;
}

void expect_schema_valid(const std::string& text) {
  const auto errors = schema().validate(nlohmann::json::parse(text));
  EXPECT_TRUE(errors.empty()) << (errors.empty() ? "" : errors.front());
}

TEST_F(CliTest, SimulateIsByteDeterministic) {
  const std::string a = simulate_one("a.csv", 11);
  const std::string b = simulate_one("b.csv", 11);
  const std::string c = simulate_one("c.csv", 12);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
}

TEST_F(CliTest, SimulateMatchesLibrarySampler) {
  const Dataset d = read_dataset(simulate_one("a.csv", 5));
  const SampleSet s = sample(40, SymMat::diagonal(std::vector<double>{2, 1, 1}), CovParams{1.0, 0.1}, 5);
  ASSERT_EQ(d.observations.size(), 40u);
  for (int i = 0; i < 40; ++i) EXPECT_EQ(d.observations[i], s[i]);
}

TEST_F(CliTest, CsvRoundTripIsExact) {
  Dataset d;
  d.p = 2;
  d.observations = {SymMat::from_packed(2, {0.1, 1.0 / 3.0, -2e-300}), SymMat::from_packed(2, {1e300, -0.7, 5})};
  d.groups = {1, 2};
  std::ostringstream out;
  write_dataset(out, d);
  std::istringstream in(out.str());
  const Dataset back = parse_dataset(in, "mem");
  EXPECT_EQ(back.observations, d.observations);
  EXPECT_EQ(back.groups, d.groups);
}

TEST_F(CliTest, TestReportIsSchemaValidAndDeterministic) {
  const std::string data = simulate_one("d.csv");
  write(path("h.json"), R"({"test_id": "s3", "multiplicities": [1, 2], "cov": {"estimate": true}})");
  const Outcome a = invoke({"test", "--data", data, "--config", path("h.json"), "--no-timestamp"});
  const Outcome b = invoke({"test", "--data", data, "--config", path("h.json"), "--no-timestamp", "--out", path("r.json")});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("r.json")), a.out);
  expect_schema_valid(a.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["test_id"], "s3");
  EXPECT_EQ(j["distribution"]["df"], 2.0);
}

TEST_F(CliTest, TimestampPresentByDefault) {
  const std::string data = simulate_one("d.csv");
  write(path("h.json"), R"({"test_id": "a0", "M0": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  const Outcome r = invoke({"test", "--data", data, "--config", path("h.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_schema_valid(r.out);
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("timestamp"));
}

TEST_F(CliTest, A0AtSampleMeanHasUnitPValue) {
  const std::string data = simulate_one("d.csv");
  const SymMat mean = sample_mean(read_dataset(data).one_sample());
  nlohmann::json cfg;
  cfg["test_id"] = "a0";
  cfg["M0"] = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    cfg["M0"].push_back(nlohmann::json::array());
    for (int j = 0; j < 3; ++j) cfg["M0"][i].push_back(mean(i, j));
  }
  cfg["cov"] = {{"known", {{"sigma2", 1.0}, {"tau", 0.1}}}};
  write(path("h.json"), cfg.dump());
  const Outcome r = invoke({"test", "--data", data, "--config", path("h.json"), "--no-timestamp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["statistic"].get<double>(), 0.0, 1e-20);
  EXPECT_EQ(j["p_value"].get<double>(), 1.0);
}

TEST_F(CliTest, C2ComputesWeightsOnTheFly) {
  const std::string data = simulate_one("d.csv");
  write(path("h.json"),
        R"({"test_id": "c2", "U0": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "multiplicities": [1, 2], "reps": 4000, "seed": 3})");
  const Outcome r = invoke({"test", "--data", data, "--config", path("h.json"), "--no-timestamp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_schema_valid(r.out);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("cone_weights"));
  EXPECT_EQ(j["cone_weights"]["reps"], 4000);
  EXPECT_EQ(j["seed"], 3);
}

TEST_F(CliTest, TwoSampleFromGroupedFile) {
  write(path("sim.json"),
        R"({"p": 2, "n1": 30, "n2": 25, "M1": [[1, 0], [0, 0]], "M2": [[1, 0], [0, 0]], "sigma2": 1, "tau": 0, "seed": 2})");
  ASSERT_EQ(invoke({"simulate", "--config", path("sim.json"), "--out", path("d.csv")}).code, kOk);
  write(path("h.json"), R"({"test_id": "2s1", "multiplicities": [1, 1]})");
  const Outcome r = invoke({"test", "--data", path("d.csv"), "--config", path("h.json"), "--no-timestamp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_schema_valid(r.out);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n1"], 30);
  EXPECT_EQ(j["n2"], 25);
}

TEST_F(CliTest, CalibrateReportAndQqCsv) {
  write(path("cal.json"), R"({"test_id": "a0", "M0": [[1, 0], [0, 1]], "cov": {"known": {"sigma2": 1, "tau": 0}},
    "generator": {"M": [[1, 0], [0, 1]], "sigma2": 1, "tau": 0}, "n": 20, "reps": 1000, "seed": 4})");
  const Outcome r = invoke({"calibrate", "--config", path("cal.json"), "--out", path("qq.csv"), "--no-timestamp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_schema_valid(r.out);
  std::istringstream csv(slurp(path("qq.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "q_theoretical,q_empirical");
  int rows = 0;
  double prev_t = -1, prev_e = -1;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double t = std::stod(line.substr(0, comma)), e = std::stod(line.substr(comma + 1));
    EXPECT_GE(t, prev_t);
    EXPECT_GE(e, prev_e);
    prev_t = t;
    prev_e = e;
    ++rows;
  }
  EXPECT_EQ(rows, 99);
}

TEST_F(CliTest, ConeWeightsIsotropic) {
  const Outcome r = invoke({"cone-weights", "--d", "0,0,0", "--reps", "20000", "--seed", "2", "--no-timestamp"});
  ASSERT_EQ(r.code, kOk) << r.err;
  expect_schema_valid(r.out);
  const auto w = nlohmann::json::parse(r.out)["weights"];
  EXPECT_NEAR(w[0].get<double>(), 1.0 / 3, 0.015);
  EXPECT_NEAR(w[1].get<double>(), 0.5, 0.015);
  EXPECT_NEAR(w[2].get<double>(), 1.0 / 6, 0.015);
}

TEST_F(CliTest, CovCheckRequiresEnoughObservations) {
  write(path("sim.json"), R"({"p": 3, "n": 27, "M": [[0,0,0],[0,0,0],[0,0,0]], "sigma2": 1, "tau": 0.2, "seed": 1})");
  ASSERT_EQ(invoke({"simulate", "--config", path("sim.json"), "--out", path("d.csv")}).code, kOk);
  const Outcome r = invoke({"cov-check", "--data", path("d.csv")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("28"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExitCodesOnMalformedInput) {
  const std::string data = simulate_one("d.csv");
  write(path("h.json"), R"({"test_id": "a2", "U0": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  EXPECT_EQ(invoke({"test", "--data", path("missing.csv"), "--config", path("h.json")}).code, kInputError);
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("missing.json")}).code, kInputError);
  EXPECT_EQ(invoke({"bogus"}).code, kInputError);
  EXPECT_EQ(invoke({}).code, kInputError);
  EXPECT_EQ(invoke({"test", "--data", data}).code, kInputError);

  write(path("bad.csv"), "p=2,group\n1,2,3,1\n1,x,3,1\n");
  Outcome r = invoke({"test", "--data", path("bad.csv"), "--config", path("h.json")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find(":3: field 2"), std::string::npos) << r.err;

  write(path("short.csv"), "p=2,group\n1,2,1\n");
  EXPECT_EQ(invoke({"test", "--data", path("short.csv"), "--config", path("h.json")}).code, kInputError);
  write(path("nan.csv"), "p=2,group\n1,nan,3,1\n");
  EXPECT_EQ(invoke({"test", "--data", path("nan.csv"), "--config", path("h.json")}).code, kInputError);
  write(path("nohdr.csv"), "1,2,3,1\n");
  EXPECT_EQ(invoke({"test", "--data", path("nohdr.csv"), "--config", path("h.json")}).code, kInputError);

  write(path("bad.json"), "{not json");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("bad.json")}).code, kInputError);
  write(path("unknown.json"), R"({"test_id": "a9"})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("unknown.json")}).code, kInputError);
  write(path("extra.json"), R"({"test_id": "a0", "M0": [[1,0,0],[0,1,0],[0,0,1]], "typo": 1})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("extra.json")}).code, kInputError);
  write(path("dim.json"), R"({"test_id": "a0", "M0": [[1, 0], [0, 1]]})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("dim.json")}).code, kInputError);
  write(path("tau.json"), R"({"test_id": "a0", "M0": [[1,0,0],[0,1,0],[0,0,1]], "cov": {"known": {"sigma2": 1, "tau": 0.5}}})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("tau.json")}).code, kInputError);
  write(path("u0.json"), R"({"test_id": "a2", "U0": [[1, 0.5, 0], [0, 1, 0], [0, 0, 1]]})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("u0.json")}).code, kInputError);
  write(path("two.json"), R"({"test_id": "2a0"})");
  EXPECT_EQ(invoke({"test", "--data", data, "--config", path("two.json")}).code, kInputError);
}

TEST_F(CliTest, LogTransformNeedsPositiveDefinite) {
  write(path("neg.csv"), "p=2,group\n1,0,-1,1\n2,0,1,1\n1,0,2,1\n");
  write(path("h.json"), R"({"test_id": "a0", "M0": [[0, 0], [0, 0]]})");
  const Outcome r = invoke({"test", "--data", path("neg.csv"), "--config", path("h.json"), "--log-transform"});
  EXPECT_EQ(r.code, kInputError);
  write(path("pos.csv"), "p=2,group\n1,0,1,1\n2,0.1,1,1\n1,0,2,1\n1.5,0.2,1.1,1\n");
  const Outcome ok = invoke({"test", "--data", path("pos.csv"), "--config", path("h.json"), "--log-transform",
                         "--no-timestamp"});
  ASSERT_EQ(ok.code, kOk) << ok.err;
  EXPECT_EQ(nlohmann::json::parse(ok.out)["log_transform"], true);
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  const Outcome v = invoke({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

}  // namespace
}  // namespace symtest::cli
