// Copyright 2026 The sdist Authors
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

#include "sdist/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdist/designer.hpp"
#include "sdist/distribution.hpp"
#include "sdist/sampler.hpp"
#include "sdist/serialize.hpp"

namespace sdist {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args,
                const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("sdist_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                               ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

const std::vector<std::string> kNormalLike = {"--x0", "10", "--alpha", "1",
                                              "--g",  "0.7", "--h",    "3"};

std::vector<std::string> with(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST(Cli, QuantileZero) {
  const Outcome r = run_cli({"quantile", "--f0", "0.5", "--x0", "10",
                             "--alpha", "1", "--g", "0.7", "--h", "3", "--F",
                             "0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(std::stod(r.out), 7.2211, 5e-5);
  EXPECT_EQ(r.out, format_real(quantile(SParams(0.5, 10, 1, 0.7, 3), 0)) + "\n");
}

TEST(Cli, QuantileCsvMatchesLibrary) {
  const Outcome r = run_cli(with({"quantile", "--format", "csv", "--F", "0.1",
                                  "0.5", "1"},
                                 kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  const SParams p(0.5, 10, 1, 0.7, 3);
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{
                              "F,X", "0.1," + format_real(quantile(p, 0.1)),
                              "0.5,10", "1,+inf"}));
}

TEST(Cli, DesignPrintsSolvedValue) {
  const Outcome r = run_cli({"design", "--solve", "x0", "--constraint-F", "0",
                             "--constraint-x", "0", "--alpha", "1", "--g",
                             "0.1", "--h", "8", "--format", "plain"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), 0.595685, 5e-7);
}

TEST(Cli, DesignJsonVerifies) {
  const Outcome r = run_cli({"design", "--solve", "g", "--constraint-F", "0.1",
                             "--constraint-x", "12", "--alpha", "0.5", "--h",
                             "3", "--x0", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["solve"], "g");
  EXPECT_NEAR(j["value"].get<double>(), 2.28146, 5e-6);
  EXPECT_NEAR(j["verification"]["achieved_x"].get<double>(), 12, 1e-9);
  EXPECT_EQ(j["scan"]["sign_changes"], 1);
}

TEST(Cli, DesignRejectsSolvedFlag) {
  const Outcome r = run_cli({"design", "--solve", "x0", "--x0", "1",
                             "--constraint-F", "0", "--constraint-x", "0",
                             "--alpha", "1", "--g", "0.1", "--h", "8"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--x0"), std::string::npos);
}

TEST(Cli, DesignDomainFailure) {
  const Outcome r = run_cli({"design", "--solve", "x0", "--constraint-F", "0",
                             "--constraint-x", "0", "--alpha", "1", "--g",
                             "1.5", "--h", "4"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, SampleIsDeterministic) {
  const auto args = with({"sample", "--n", "3", "--seed", "1"}, kNormalLike);
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 3u);
  const auto exact = sample({SParams(0.5, 10, 1, 0.7, 3), 3, 1});
  EXPECT_EQ(lines(a.out)[0], format_real(exact[0]));
}

TEST(Cli, SampleJsonAtFullPrecision) {
  const Outcome r = run_cli(
      with({"sample", "--n", "4", "--seed", "9", "--format", "json"},
           kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto exact = sample({SParams(0.5, 10, 1, 0.7, 3), 4, 9});
  EXPECT_EQ(json::parse(r.out).get<std::vector<double>>(), exact);
}

TEST(Cli, SampleMetadata) {
  TempDir dir;
  const Outcome r = run_cli(with({"sample", "--n", "10", "--seed", "3",
                                  "--metadata", dir.file("meta.json"),
                                  "--output", dir.file("x.txt")},
                                 kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream meta(dir.file("meta.json"));
  const json j = json::parse(meta);
  EXPECT_EQ(j["n"], 10);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["generator"], std::string(kGeneratorId));
  EXPECT_EQ(params_from_json(j["params"]), SParams(0.5, 10, 1, 0.7, 3));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli(with({"quantile"}, kNormalLike)).code, cli::kExitUsage);

  Outcome r = run_cli({"quantile", "--x0", "10", "--alpha", "-1", "--g", "0.7",
                       "--h", "3", "--F", "0.5"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--alpha: must be > 0"), std::string::npos);

  r = run_cli({"quantile", "--x0", "10", "--alpha", "1", "--g", "3", "--h",
               "0.7", "--F", "0.5"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--h: must exceed --g"), std::string::npos);

  r = run_cli({"quantile", "--alpha", "1", "--g", "0.7", "--h", "3", "--F",
               "0.5"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("missing required flag --x0"), std::string::npos);

  r = run_cli(with({"quantile", "--f0", "1", "--F", "0.5"}, kNormalLike));
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--f0"), std::string::npos);

  EXPECT_EQ(run_cli(with({"quantile", "--F", "0.5", "--format", "xml"},
                         kNormalLike))
                .code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli(with({"sample", "--n", "0"}, kNormalLike)).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli(with({"pdf", "--x", "1", "--F", "0.5"}, kNormalLike)).code,
            cli::kExitUsage);
}

TEST(Cli, DomainErrors) {
  const Outcome r = run_cli(with({"quantile", "--F", "1.5"}, kNormalLike));
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsCleanly) {
  const Outcome r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("quantile"), std::string::npos);
}

TEST(Cli, CdfAndPdf) {
  Outcome r = run_cli(with({"cdf", "--x", "10", "7", "--format", "csv"},
                           kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"x,F", "10,0.5", "7,0"}));

  r = run_cli(with({"pdf", "--F", "0.5"}, kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, format_real(std::pow(0.5, 0.7) - 0.125) + "\n");
}

TEST(Cli, ClassifyNeedsOnlyShapes) {
  Outcome r = run_cli({"classify", "--g", "2", "--h", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["case"], "VI");
  EXPECT_EQ(j["degeneracy_index"], 1);
  EXPECT_FALSE(j.contains("support"));

  r = run_cli(with({"classify"}, kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j["case"], "II");
  EXPECT_NEAR(real_from_json(j["support"]["left"]), 7.2211, 5e-5);
  EXPECT_EQ(j["support"]["right"], "+inf");
}

TEST(Cli, CurveDefaultGrid) {
  const Outcome r = run_cli(with({"curve"}, kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 513u);
  EXPECT_EQ(rows[0], "F,X,pdf");
  EXPECT_EQ(rows[1].substr(0, 6), "0.001,");
  EXPECT_EQ(rows[512].substr(0, 6), "0.999,");
}

TEST(Cli, CurveBadGrid) {
  EXPECT_EQ(run_cli(with({"curve", "--F-min", "0.9", "--F-max", "0.1"},
                         kNormalLike))
                .code,
            cli::kExitUsage);
}

TEST(Cli, FitThenReuseParameters) {
  TempDir dir;
  const SParams truth(0.5, 50, 1, 0.6, 3);
  std::ostringstream data;
  data << "value\n";
  for (double x : sample({truth, 300, 5})) data << x << '\n';

  const Outcome fitted = run_cli({"fit", "--curve", dir.file("curve.csv")},
                                 data.str());
  ASSERT_EQ(fitted.code, 0) << fitted.err;
  const json j = json::parse(fitted.out);
  const SParams p = params_from_json(j);
  EXPECT_NEAR(p.x0(), 50, 0.5);
  {
    std::ofstream(dir.file("fit.json")) << fitted.out;
  }
  EXPECT_EQ(lines(run_cli({"curve", "--params", dir.file("fit.json")}).out),
            lines([&] {
              std::ifstream f(dir.file("curve.csv"));
              std::stringstream s;
              s << f.rdbuf();
              return s.str();
            }()));

  const Outcome s = run_cli({"sample", "--params", dir.file("fit.json"), "--n",
                             "2", "--seed", "1"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(lines(s.out)[0], format_real(sample({p, 2, 1})[0]));

  // Flags override the file.
  const Outcome q = run_cli(
      {"quantile", "--params", dir.file("fit.json"), "--x0", "0", "--F", "0.5"});
  EXPECT_EQ(q.out, "0\n");
}

TEST(Cli, FitRejectsNonNumericLines) {
  std::string data = "x\n";
  for (int i = 0; i < 30; ++i) data += std::to_string(i * 0.37) + "\n";
  data += "oops\n1.0\nbad\n";
  const Outcome r = run_cli({"fit"}, data);
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("non-numeric input on lines 32, 34"), std::string::npos)
      << r.err;
}

TEST(Cli, FitTooFewPoints) {
  const Outcome r = run_cli({"fit"}, "1\n2\n3\n");
  EXPECT_EQ(r.code, cli::kExitDomain);
}

TEST(Cli, FitMissingInputFile) {
  EXPECT_EQ(run_cli({"fit", "--input", "/nonexistent/sdist.txt"}).code,
            cli::kExitUsage);
}

TEST(Cli, OracleCheck) {
  const Outcome r = run_cli(with({"oracle-check", "--format", "json"},
                                 kNormalLike));
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(j["max_rel_deviation"].get<double>(), 1e-6);
  EXPECT_EQ(j["points"], 99);
}

TEST(Cli, VerboseProvenanceOnStderr) {
  const Outcome r = run_cli(with({"quantile", "--F", "0.999999", "--verbose"},
                                 kNormalLike));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("# f0 0.5 (default)"), std::string::npos);
  EXPECT_NE(r.err.find("# generator " + std::string(kGeneratorId)),
            std::string::npos);
  EXPECT_NE(r.err.find("upper-tail-ode"), std::string::npos);
  EXPECT_EQ(lines(r.out).size(), 1u);
}

}  // namespace
}  // namespace sdist
