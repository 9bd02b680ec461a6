// Copyright 2026 The ldpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ldpsim/harness.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ldpsim/config.h"
#include "ldpsim/error.h"
#include "ldpsim/export.h"

namespace ldpsim {
namespace {

ExperimentConfig config_from(const std::string& text, ExperimentKind kind) {
  std::istringstream in(text);
  ExperimentConfig c = parse_config(in, kind);
  finalize_config(c);
  return c;
}

std::string render(const std::vector<ResultRow>& rows, OutputFormat format) {
  std::ostringstream out;
  write_results(rows, format, out);
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out(1);
  for (char ch : line) {
    if (ch == sep) {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    parallel_for(50, 3, [](std::size_t i) {
      if (i == 31 || i == 12) throw Error("task " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "task 12");
  }
}

TEST(Config, ParsesKeysAndExpressions) {
  const auto c = config_from(
      "# comment\n"
      "seed = 42\n"
      "epsilons = 1, ln(2) ,3.5\n"
      "protocols = grr, oue\n"
      "ks = 74,7\n"
      "form = exact\n"
      "\n",
      ExperimentKind::kAnalytic);
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>(42));
  ASSERT_EQ(c.epsilons.size(), 3u);
  EXPECT_NEAR(c.epsilons[1], std::log(2.0), 1e-15);
  EXPECT_EQ(c.protocols, (std::vector<Protocol>{Protocol::kGrr, Protocol::kOue}));
  EXPECT_EQ(c.ks, (std::vector<std::size_t>{74, 7}));
  EXPECT_EQ(c.form, AccuracyForm::kExact);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(config_from("colour = red\nseed = 1\n", ExperimentKind::kAnalytic),
               ConfigError);
  EXPECT_THROW(config_from("epsilons = 1\n", ExperimentKind::kAnalytic),
               ConfigError);
  EXPECT_THROW(config_from("seed = x\n", ExperimentKind::kAnalytic), ConfigError);
  EXPECT_THROW(config_from("seed = 1\nsolutions = spl\n", ExperimentKind::kReident),
               ConfigError);
  EXPECT_THROW(config_from("seed = 1\nsolutions = smp\n", ExperimentKind::kMse),
               ConfigError);
  EXPECT_THROW(
      config_from("seed = 1\nexperiment = mse\n", ExperimentKind::kAnalytic),
      ConfigError);
}

TEST(Export, HeaderOnlyForNoRows) {
  const std::string csv = render({}, OutputFormat::kCsv);
  EXPECT_EQ(csv, "experiment,protocol,solution,epsilon,beta,metric,value,stderr,"
                 "run,seed,flags\n");
  EXPECT_EQ(render({}, OutputFormat::kJsonl), "");
}

TEST(Export, CsvValuesRoundTrip) {
  ResultRow row;
  row.experiment = "mse_utility";
  row.solution = "rsfd_grr";
  row.epsilon = std::log(4.0);
  row.metric = "mse_avg";
  row.value = 1.0 / 3.0;
  row.seed = 18446744073709551615ULL;
  row.flags = "n=5000";
  const std::string csv = render({row}, OutputFormat::kCsv);
  const std::string line = csv.substr(csv.find('\n') + 1);
  const auto fields = split(line.substr(0, line.size() - 1), ',');
  ASSERT_EQ(fields.size(), 11u);
  EXPECT_EQ(fields[3], format_real(std::log(4.0)));
  EXPECT_EQ(std::stod(fields[6]), std::stod(format_real(1.0 / 3.0)));
  EXPECT_EQ(fields[6], format_real(std::stod(fields[6])));
  EXPECT_EQ(fields[4], "");
  EXPECT_EQ(fields[9], "18446744073709551615");
}

TEST(Export, JsonlHasOneLinePerRow) {
  std::vector<ResultRow> rows(3);
  rows[1].flags = "quote\"and\\slash";
  rows[2].value = NAN;
  const std::string out = render(rows, OutputFormat::kJsonl);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 3);
  EXPECT_NE(out.find(R"(quote\"and\\slash)"), std::string::npos);
  EXPECT_NE(out.find("\"value\":null"), std::string::npos);
}

TEST(Export, UnwritablePathIsAnError) {
  EXPECT_THROW(export_results({}, OutputFormat::kCsv, "/nonexistent/dir/x.csv"),
               Error);
}

TEST(Harness, AnalyticGridShape) {
  const auto c = config_from(
      "seed = 1\nprotocols = grr\nepsilons = 1,2\nks = 74,7,16\nmulti = true\n",
      ExperimentKind::kAnalytic);
  const auto rows = run_experiment(c);
  std::map<std::string, int> metrics;
  for (const auto& r : rows) ++metrics[r.metric];
  EXPECT_EQ(metrics["acc"], 6);
  EXPECT_EQ(metrics["acc_uniform"], 2);
  EXPECT_EQ(metrics["acc_non_uniform"], 2);
}

TEST(Harness, ThreadCountDoesNotChangeOutput) {
  const std::string base =
      "seed = 5\nruns = 2\ndataset = synthetic:adult_like:600\n"
      "epsilons = 2, 8\nsurveys = 3\n";
  auto one = config_from(base + "threads = 1\n", ExperimentKind::kReident);
  auto many = config_from(base + "threads = 8\n", ExperimentKind::kReident);
  EXPECT_EQ(render(run_experiment(one), OutputFormat::kCsv),
            render(run_experiment(many), OutputFormat::kCsv));

  const std::string mse =
      "seed = 6\nruns = 2\ndataset = synthetic:adult_like:800\n"
      "epsilons = ln(2)\n";
  EXPECT_EQ(render(run_experiment(config_from(mse + "threads = 1\n",
                                              ExperimentKind::kMse)),
                   OutputFormat::kJsonl),
            render(run_experiment(config_from(mse + "threads = 3\n",
                                              ExperimentKind::kMse)),
                   OutputFormat::kJsonl));
}

TEST(Harness, UniformPriorsMakeRealisticFakesIdentical) {
  const auto c = config_from(
      "seed = 8\nruns = 2\ndataset = synthetic:adult_like:700\n"
      "epsilons = ln(2), ln(7)\nprior = uniform\n",
      ExperimentKind::kMse);
  std::map<std::string, double> values;
  for (const auto& r : run_experiment(c)) {
    values[r.solution + "|" + format_real(*r.epsilon) + "|" +
           std::to_string(r.run)] = r.value;
  }
  int compared = 0;
  for (const auto& [key, v] : values) {
    if (key.rfind("rsrfd_", 0) != 0) continue;
    const std::string twin = "rsfd_" + key.substr(6);
    ASSERT_TRUE(values.count(twin)) << twin;
    EXPECT_NEAR(v, values[twin], 1e-9) << key;
    ++compared;
  }
  EXPECT_EQ(compared, 12);
}

TEST(Harness, GridPointErrorsNameThePoint) {
  EXPECT_THROW(config_from("seed = 1\nks = 1\n", ExperimentKind::kAnalytic),
               ConfigError);
  auto c = config_from("seed = 1\nprotocols = grr\nepsilons = 1\nks = 4\n",
                       ExperimentKind::kAnalytic);
  c.ks = {1};
  try {
    run_experiment(c);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("grid point"), std::string::npos);
  }
}

}  // namespace
}  // namespace ldpsim
