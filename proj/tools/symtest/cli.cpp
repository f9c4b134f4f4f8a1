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

#include "cli.hpp"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "report.hpp"
#include "symtest/calibrate.hpp"
#include "symtest/eigen_sym.hpp"
#include "symtest/errors.hpp"
#include "symtest/matnormal.hpp"

namespace symtest::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr int kDefaultCalibrationReps = 5000;
constexpr int kDefaultConeReps = 100000;

struct Options {
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  bool log_transform = false;
  bool no_timestamp = false;
  std::vector<double> d_true;
  std::vector<int> mult;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  f.flush();
  if (!f) throw InputError("error while writing '" + path + "'");
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  const std::string text = dump(report);
  out << text;
  if (!o.out.empty()) write_text(o.out, text);
}

Dataset load_data(const Options& o) {
  Dataset data = read_dataset(o.data);
  if (o.log_transform) {
    for (std::size_t i = 0; i < data.observations.size(); ++i) {
      try {
        data.observations[i] = matrix_log(data.observations[i]);
      } catch (const NumericalError&) {
        throw InputError(o.data + ": observation " + std::to_string(i + 1) +
                         " is not positive definite; --log-transform needs SPD data");
      }
    }
  }
  return data;
}

ReportMeta meta_for(const Options& o, std::optional<std::uint64_t> seed) {
  ReportMeta m;
  m.seed = seed;
  m.timestamp = !o.no_timestamp;
  m.log_transform = o.log_transform;
  return m;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const SimulateConfig c = parse_simulate(read_json_file(o.config));
  const std::uint64_t seed = o.seed.value_or(c.seed.value_or(kDefaultSeed));
  Dataset data;
  data.p = c.p;
  const SampleSet g1 = sample(c.n1, c.mean1, c.cov, seed, 0);
  data.observations = g1.observations();
  data.groups.assign(c.n1, 1);
  if (c.n2 > 0) {
    const SampleSet g2 = sample(c.n2, c.mean2, c.cov, seed, static_cast<std::uint64_t>(c.n1));
    data.observations.insert(data.observations.end(), g2.begin(), g2.end());
    data.groups.insert(data.groups.end(), c.n2, 2);
  }
  write_dataset_file(o.out, data);
  out << "wrote " << data.observations.size() << " observations (p = " << c.p << ") to " << o.out << "\n";
  return kOk;
}

int run_hypothesis(const Options& o, const Dataset& data, HypothesisConfig h, std::ostream& out) {
  const std::optional<std::uint64_t> seed = o.seed ? o.seed : h.seed;
  std::optional<ConeWeights> weights;
  if (h.spec.id == TestId::C2 && h.spec.cone_weights.empty()) {
    const Multiplicities mult = h.spec.mult.value_or(Multiplicities::distinct(data.p));
    weights = cone_weights_for_pattern(mult, o.reps.value_or(h.reps.value_or(kDefaultConeReps)),
                                       seed.value_or(kDefaultSeed), h.threads.value_or(default_threads()));
    h.spec.cone_weights = weights->weights;
  }
  TestResult result;
  if (is_two_sample(h.spec.id)) {
    int n1 = 0;
    const SampleSet s = data.two_sample(&n1);
    h.spec.n1 = n1;
    result = run_test(h.spec, s);
  } else {
    result = run_test(h.spec, data.one_sample());
  }
  if (weights && !h.spec.mult) {
    result.warnings.emplace_back("no multiplicities given; cone weights computed for distinct eigenvalues");
  }
  const ReportMeta meta = meta_for(o, weights ? std::optional(seed.value_or(kDefaultSeed)) : seed);
  emit(test_report(result, meta, weights), o, out);
  return kOk;
}

int cmd_test(const Options& o, std::ostream& out) {
  const Dataset data = load_data(o);
  const Json j = read_json_file(o.config);
  return run_hypothesis(o, data, parse_hypothesis(j, data.p), out);
}

int cmd_cov_check(const Options& o, std::ostream& out) {
  const Dataset data = load_data(o);
  HypothesisConfig h;
  h.spec.id = TestId::CovCheck;
  return run_hypothesis(o, data, h, out);
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  CalibrateConfig c = parse_calibrate(read_json_file(o.config));
  HypothesisConfig& h = c.hypothesis;
  const std::uint64_t seed = o.seed.value_or(h.seed.value_or(kDefaultSeed));
  const int threads = h.threads.value_or(default_threads());
  if (h.spec.id == TestId::C2 && h.spec.cone_weights.empty()) {
    const Multiplicities mult = h.spec.mult.value_or(Multiplicities::distinct(c.generator.mean.dim()));
    h.spec.cone_weights = cone_weights_for_pattern(mult, kDefaultConeReps, seed, threads).weights;
  }
  CalibrationOptions opts;
  opts.n = c.n;
  opts.n1 = c.n1;
  opts.reps = o.reps.value_or(h.reps.value_or(kDefaultCalibrationReps));
  opts.seed = seed;
  opts.threads = threads;
  const CalibrationReport report = calibrate_null(h.spec, c.generator, opts);
  out << dump(calibration_report(report, meta_for(o, seed)));
  if (!o.out.empty()) {
    std::string csv = "q_theoretical,q_empirical\n";
    for (const auto& [theo, emp] : qq_points(report)) csv += format_double(theo) + "," + format_double(emp) + "\n";
    write_text(o.out, csv);
  }
  return kOk;
}

int cmd_cone_weights(const Options& o, std::ostream& out) {
  ConeWeightsConfig c;
  if (!o.config.empty()) c = parse_cone_weights(read_json_file(o.config));
  if (!o.d_true.empty()) c.d_true = o.d_true;
  if (!o.mult.empty()) c.mult = Multiplicities(o.mult);
  if (o.d_true.empty() && !o.mult.empty()) c.d_true.reset();
  if (!c.d_true && !c.mult) throw InputError("cone-weights needs d_true or multiplicities (--d, --mult or --config)");
  const std::uint64_t seed = o.seed.value_or(c.seed.value_or(kDefaultSeed));
  const int reps = o.reps.value_or(c.reps.value_or(kDefaultConeReps));
  const ConeWeights w = c.d_true ? estimate_cone_weights(*c.d_true, reps, seed, default_threads())
                                 : cone_weights_for_pattern(*c.mult, reps, seed, default_threads());
  emit(cone_weights_report(w, meta_for(o, seed)), o, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Likelihood-ratio tests for eigenstructure of Gaussian symmetric-matrix data", "symtest"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto add_seed_reps = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed (overrides the config)");
    sub->add_option("--reps", o.reps, "Monte Carlo replicates (overrides the config)")->check(CLI::PositiveNumber);
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Simulate a data set to CSV");
  simulate->add_option("--config", o.config, "Simulation config (JSON)")->required();
  simulate->add_option("--out", o.out, "Output CSV path")->required();
  simulate->add_option("--seed", o.seed, "Random seed (overrides the config)");

  CLI::App* test = app.add_subcommand("test", "Run a hypothesis test on a data file");
  test->add_option("--data", o.data, "Data CSV")->required();
  test->add_option("--config", o.config, "Hypothesis config (JSON)")->required();
  test->add_option("--out", o.out, "Also write the report to this path");
  add_seed_reps(test);
  test->add_flag("--log-transform", o.log_transform, "Apply the matrix logarithm to each observation first");
  test->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from the report");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Monte Carlo null calibration of a test");
  calibrate->add_option("--config", o.config, "Calibration config (JSON)")->required();
  calibrate->add_option("--out", o.out, "QQ plot CSV path (q_theoretical,q_empirical)");
  add_seed_reps(calibrate);
  calibrate->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from the report");

  CLI::App* cone = app.add_subcommand("cone-weights", "Estimate cone-test mixture weights");
  cone->add_option("--config", o.config, "Cone-weight config (JSON)");
  cone->add_option("--d", o.d_true, "True eigenvalues, comma separated")->delimiter(',');
  cone->add_option("--mult", o.mult, "Multiplicity pattern, comma separated")->delimiter(',');
  cone->add_option("--out", o.out, "Also write the report to this path");
  add_seed_reps(cone);
  cone->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from the report");

  CLI::App* cov = app.add_subcommand("cov-check", "Check the orthogonally invariant covariance structure");
  cov->add_option("--data", o.data, "Data CSV")->required();
  cov->add_option("--out", o.out, "Also write the report to this path");
  cov->add_flag("--log-transform", o.log_transform, "Apply the matrix logarithm to each observation first");
  cov->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from the report");

  std::vector<std::string> argv_store{"symtest"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "symtest: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (test->parsed()) return cmd_test(o, out);
    if (calibrate->parsed()) return cmd_calibrate(o, out);
    if (cone->parsed()) return cmd_cone_weights(o, out);
    if (cov->parsed()) return cmd_cov_check(o, out);
  } catch (const InputError& e) {
    err << "symtest: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "symtest: internal consistency error: " << e.what() << "\n";
    return kConsistencyError;
  } catch (const std::exception& e) {
    err << "symtest: internal error: " << e.what() << "\n";
    return kConsistencyError;
  }
  return kInputError;
}

}  // namespace symtest::cli
