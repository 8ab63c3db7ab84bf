// Copyright 2026 The xlt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "helpers.h"
#include "xlt/cli.h"
#include "xlt/records.h"

namespace xlt {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// A scratch corpus directory with a config file pointing at it.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(XLT_BINARY_DIR) / ("cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    config_ = (dir_ / "config.json").string();
    Json cfg = {{"paths", {{"corpus_dir", (dir_ / "out").string()}, {"model_file", (dir_ / "out/model.jsonl").string()}}}};
    ASSERT_TRUE(WriteFile(config_, cfg.dump()).has_value());
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun Xlt(std::vector<std::string> args) {
    args.insert(args.begin(), {"--config", config_});
    return Cli(std::move(args));
  }
  std::string Out(const std::string& name) { return testing::ReadFileForTest((dir_ / "out" / name).string()); }

  fs::path dir_;
  std::string config_;
};

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"no-such-command"}).code, 2);
  CliRun r = Cli({"train-online", "--steps", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage error"), std::string::npos) << r.err;
  EXPECT_EQ(Cli({"eval", "--pair", "DJ-XX"}).code, 2);
  EXPECT_EQ(Cli({"--jobs", "0", "eval"}).code, 2);
}

TEST(CliUsage, PrintConfig) {
  CliRun r = Cli({"--print-config"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["k"], 20);
  EXPECT_DOUBLE_EQ(j["cache"]["p_remove"].get<double>(), 0.3);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  CliRun r = Xlt({"gen-tests", "--in", (dir_ / "missing.dj").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  ASSERT_TRUE(WriteFile((dir_ / "bad.dj").string(), "static int f( {").has_value());
  r = Xlt({"gen-tests", "--in", (dir_ / "bad.dj").string()});
  EXPECT_EQ(r.code, 1);
  Json j = Json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(j["error"], "ParseError");
  ASSERT_TRUE(WriteFile((dir_ / "bad.json").string(), "{\"k\": 0}").has_value());
  EXPECT_NE(Cli({"--config", (dir_ / "bad.json").string(), "eval"}).code, 0);
}

TEST_F(CliTest, EvalPerfect) {
  CliRun r = Xlt({"eval", "--pair", "DJ-DP", "--model", "perfect", "--split", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("DJ-DP CA@1=1.000"), std::string::npos) << r.out;
  auto lines = ParseJsonLines(Out("eval.jsonl"));
  ASSERT_TRUE(lines.has_value());
  ASSERT_EQ(lines->size(), 1u);
  EXPECT_EQ((*lines)[0]["model"], "perfect");
}

TEST_F(CliTest, StagesChain) {
  ASSERT_EQ(Xlt({"gen-tests", "--limit", "12"}).code, 0);
  ASSERT_EQ(Xlt({"select-suites"}).code, 0);
  ASSERT_EQ(Xlt({"port-tests", "--target", "DP"}).code, 0);
  CliRun r = Xlt({"build-corpus"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto suites = ParseJsonLines(Out("suites.jsonl"));
  auto selected = ParseJsonLines(Out("selected.jsonl"));
  auto ported = ParseJsonLines(Out("ported_DP.jsonl"));
  auto corpus = ParseJsonLines(Out("corpus.jsonl"));
  ASSERT_TRUE(suites && selected && ported && corpus);
  EXPECT_EQ(suites->size(), 12u);
  EXPECT_LE(selected->size(), suites->size());
  EXPECT_GT(selected->size(), 0u);
  EXPECT_EQ(ported->size(), selected->size());
  EXPECT_GT(corpus->size(), 0u);
  for (const Json& p : *corpus) {
    auto pair = PairFromJson(p);
    ASSERT_TRUE(pair.has_value()) << pair.error();
  }
  r = Xlt({"train-offline", "--iterations", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "out/model.jsonl"));
  r = Xlt({"translate", "--function", (*selected)[0]["function_id"].get<std::string>(), "--target", "DC",
           "--model", (dir_ / "out/model.jsonl").string(), "--k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto cands = ParseJsonLines(r.out);
  ASSERT_TRUE(cands.has_value());
  EXPECT_GE(cands->size(), 1u);
  EXPECT_LE(cands->size(), 3u);
  r = Xlt({"train-online", "--steps", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json stats = Json::parse(Out("online_stats.json"));
  EXPECT_EQ(stats["steps"], 20);
  r = Xlt({"report", (dir_ / "out/offline_reports.jsonl").string(), (dir_ / "out/online_stats.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST_F(CliTest, OutputsIndependentOfJobs) {
  ASSERT_EQ(Xlt({"gen-tests", "--limit", "8", "--out", (dir_ / "a.jsonl").string()}).code, 0);
  ASSERT_EQ(Xlt({"--jobs", "3", "gen-tests", "--limit", "8", "--out", (dir_ / "b.jsonl").string()}).code, 0);
  EXPECT_EQ(testing::ReadFileForTest((dir_ / "a.jsonl").string()),
            testing::ReadFileForTest((dir_ / "b.jsonl").string()));
}

}  // namespace
}  // namespace xlt
