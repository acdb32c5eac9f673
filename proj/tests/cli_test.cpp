// Copyright 2026 The bbmc Authors.
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "bbmc/bbmc.hpp"
#include "support.hpp"

namespace bbmc {
namespace {

namespace fs = std::filesystem;
using testing::report_value;
using testing::run_cli;
using testing::sample_path;

std::string sample(const std::string& name) { return "'" + sample_path(name) + "'"; }

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bbmc_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::size_t count_files(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file();
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliCtl, ExOnSysBNeedsAnExperiment) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula 'EX b'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "true");
  EXPECT_EQ(report_value(r.out, "SOURCE"), "testing");
  EXPECT_GE(std::stoul(report_value(r.out, "experiments")), 1u);
  EXPECT_EQ(report_value(r.out, "operators"), "1");
}

TEST(CliCtl, ConstantNoRefutesEx) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_no.comp") + " --formula 'EX b'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "false");
}

TEST(CliCtl, TrueNeedsNoExperiments) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula true");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "true");
  EXPECT_EQ(report_value(r.out, "SOURCE"), "labels");
  EXPECT_EQ(report_value(r.out, "experiments"), "0");
}

TEST(CliCtl, MissingComponentIsBadInput) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") +
                   " --component /nonexistent/x.comp --formula true");
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(report_value(r.out, "RESULT"), "");
}

TEST(CliCtl, ParseErrorIsBadInput) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula 'EX (b'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("column"), std::string::npos) << r.err;
}

TEST(CliCtl, UnknownAtomIsBadInput) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula 'EF nowhere'");
  EXPECT_EQ(r.status, 2);
}

TEST(CliCtl, UnknownStateIsBadInput) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula true --state zz");
  EXPECT_EQ(r.status, 2);
}

TEST(CliCtl, ReportIsStable) {
  std::string args = "check-ctl --system " + sample("messaging_retry.sys") + " --component " +
                     sample("toggler.comp") + " --formula 'AF s2 & EG !s3'";
  auto a = run_cli(args);
  auto b = run_cli(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliCtl, LogIsJsonLines) {
  fs::path dir = scratch_dir("log");
  fs::create_directories(dir);
  fs::path log = dir / "log.jsonl";
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --formula 'EX b' --log '" + log.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  std::ifstream in(log);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("seq"));
    EXPECT_TRUE(j.contains("out"));
  }
  EXPECT_EQ(std::to_string(lines), report_value(r.out, "backend_queries"));
}

TEST(CliLiveness, EnvCycleIsClosure) {
  auto r = run_cli("check-liveness --system " + sample("env_cycle.sys") + " --component " +
                   sample("send_only.comp") + " --from s0 --target sf");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "true");
  EXPECT_EQ(report_value(r.out, "SOURCE"), "closure");
  EXPECT_EQ(report_value(r.out, "experiments"), "0");
}

TEST(CliLiveness, UnreachableIsClosureFalse) {
  auto r = run_cli("check-liveness --system " + sample("env_cycle.sys") + " --component " +
                   sample("send_only.comp") + " --from s0 --target dead");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "false");
  EXPECT_EQ(report_value(r.out, "SOURCE"), "closure");
  EXPECT_EQ(report_value(r.out, "experiments"), "0");
}

TEST(CliLiveness, SysBNeedsTesting) {
  auto r = run_cli("check-liveness --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --from a --target a");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "true");
  EXPECT_EQ(report_value(r.out, "SOURCE"), "testing");
  EXPECT_EQ(report_value(r.out, "graph_nodes"), "2");
  EXPECT_FALSE(report_value(r.out, "witness").empty());
}

TEST(CliLtl, AlwaysTableauOnEnvCycle) {
  auto r = run_cli("check-ltl --system " + sample("env_cycle.sys") + " --component " +
                   sample("send_only.comp") + " --tableau " + sample("true.tab") + " --tag true");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "true");
}

TEST(CliLtl, EmptySatIsFalseWithoutExperiments) {
  auto r = run_cli("check-ltl --system " + sample("sys_b.sys") + " --component " +
                   sample("constant_yes.comp") + " --tableau " + sample("empty_sat.tab") +
                   " --tag f");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "RESULT"), "false");
  EXPECT_EQ(report_value(r.out, "experiments"), "0");
}

TEST(CliLtl, GfbMatchesOracle) {
  HostSystem m = testing::sample_system("sys_b.sys");
  Tableau t = testing::sample_tableau("gf_b.tab");
  for (std::string comp : {"constant_yes.comp", "constant_no.comp", "toggler.comp"}) {
    MealyMachine x = testing::sample_component(comp);
    bool expected = oracle_ltl(m, x, t, "GFb", m.state("a"));
    auto r = run_cli("check-ltl --system " + sample("sys_b.sys") + " --component " +
                     sample(comp) + " --tableau " + sample("gf_b.tab") + " --tag GFb");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(report_value(r.out, "RESULT"), expected ? "true" : "false") << comp;
  }
}

TEST(CliLtl, AlphabetMismatchIsBadInput) {
  auto r = run_cli("check-ltl --system " + sample("env_cycle.sys") + " --component " +
                   sample("constant_yes.comp") + " --tableau " + sample("true.tab") +
                   " --tag true");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("alphabet"), std::string::npos) << r.err;
}

TEST(CliDot, CommunicationGraph) {
  fs::path dir = scratch_dir("dot_comm");
  auto r = run_cli("export-dot --system " + sample("sys_b.sys") + " --from a --target a --out '" +
                   dir.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "files"), "1");
  std::string dot = slurp(dir / "communication.dot");
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("send/yes"), std::string::npos);
  EXPECT_NE(dot.find("ack/yes"), std::string::npos);
}

TEST(CliDot, OneFilePerWitnessGraph) {
  fs::path dir = scratch_dir("dot_ctl");
  auto r = run_cli("export-dot --system " + sample("messaging.sys") +
                   " --formula '!E[true U (s2 & EG !s3)]' --out '" + dir.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report_value(r.out, "files"), "2");
  EXPECT_EQ(count_files(dir), 2u);
}

TEST(CliDot, DefiniteAnswerWritesNothing) {
  fs::path dir = scratch_dir("dot_definite");
  auto r = run_cli("export-dot --system " + sample("env_cycle.sys") +
                   " --from s0 --target sf --out '" + dir.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("note: definite answer (true)"), std::string::npos);
  EXPECT_EQ(count_files(dir), 0u);
}

TEST(CliDot, UnwritableOutputIsFailure) {
  auto r = run_cli("export-dot --system " + sample("sys_b.sys") +
                   " --from a --target a --out /proc/bbmc_nowhere");
  EXPECT_EQ(r.status, 3);
}

TEST(CliCompare, FirstHundredSeedsAgree) {
  auto r = run_cli("oracle-compare --seeds 1..100 --quiet");
  ASSERT_EQ(r.status, 0) << r.out << r.err;
  EXPECT_EQ(report_value(r.out, "disagree"), "0");
  EXPECT_EQ(report_value(r.out, "cases"), report_value(r.out, "agree"));
}

TEST(CliCompare, MutatedEngineIsCaught) {
  auto r = run_cli("oracle-compare --seeds 1..100 --quiet --mutate");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("first disagreement"), std::string::npos);
}

TEST(CliCompare, UnderstatedBoundIsClassified) {
  auto r = run_cli("oracle-compare --seeds 1..200 --limits m=1 --quiet");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(report_value(r.out, "bound_violations"), "0");
}

TEST(CliCompare, BadSeedsAreBadInput) {
  auto r = run_cli("oracle-compare --seeds x..y");
  EXPECT_EQ(r.status, 2);
}

TEST(CliExec, GarbageReplyIsFailure) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") +
                   " --component \"exec:sh -c 'while read l; do echo garbage; done'\""
                   " --state-bound 1 --formula 'EX b'");
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(report_value(r.out, "RESULT"), "");
}

TEST(CliExec, SilenceIsFailure) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") +
                   " --component 'exec:sleep 10' --state-bound 1 --timeout-ms 300"
                   " --formula 'EX b'");
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(report_value(r.out, "RESULT"), "");
}

TEST(CliExec, ExecNeedsStateBound) {
  auto r = run_cli("check-ctl --system " + sample("sys_b.sys") +
                   " --component 'exec:cat' --formula 'EX b'");
  EXPECT_EQ(r.status, 2);
}

TEST(CliExec, ServedComponentMatchesFile) {
  for (std::string comp : {"constant_yes.comp", "constant_no.comp", "toggler.comp"}) {
    std::string tail = " --formula 'AF s2' --state-bound 2";
    auto file = run_cli("check-ctl --system " + sample("messaging_retry.sys") + " --component " +
                        sample(comp) + tail);
    auto exec = run_cli("check-ctl --system " + sample("messaging_retry.sys") +
                        " --component \"exec:" + std::string(BBMC_CLI) + " serve --component " +
                        sample_path(comp) + "\"" + tail);
    ASSERT_EQ(file.status, 0) << file.err;
    ASSERT_EQ(exec.status, 0) << exec.err;
    EXPECT_EQ(report_value(file.out, "RESULT"), report_value(exec.out, "RESULT")) << comp;
    EXPECT_EQ(report_value(file.out, "experiments"), report_value(exec.out, "experiments"));
  }
}

}  // namespace
}  // namespace bbmc
