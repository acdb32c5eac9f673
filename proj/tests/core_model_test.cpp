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

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

namespace bbmc {
namespace {

using testing::bare_session;
using testing::sample_component;

std::vector<InputId> word(const MealyMachine& x, std::initializer_list<const char*> names) {
  std::vector<InputId> out;
  for (const char* n : names) out.push_back(*x.inputs().find(n));
  return out;
}

std::vector<std::string> names(const MealyMachine& x, const std::vector<OutputId>& out) {
  std::vector<std::string> r;
  for (OutputId b : out) r.push_back(x.outputs().name(b));
  return r;
}

std::vector<Communication> trace(const MealyMachine& x,
                                 std::initializer_list<std::pair<const char*, const char*>> t) {
  std::vector<Communication> out;
  for (auto [a, b] : t) out.push_back({*x.inputs().find(a), *x.outputs().find(b)});
  return out;
}

TEST(Experiment, ConstantYesAnswersSend) {
  auto x = sample_component("constant_yes.comp");
  auto s = bare_session(x);
  EXPECT_EQ(names(x, s.experiment(word(x, {"send"}))), std::vector<std::string>{"yes"});
}

TEST(Experiment, EmptySequenceOnlyResets) {
  auto x = sample_component("constant_yes.comp");
  auto s = bare_session(x);
  EXPECT_TRUE(s.experiment({}).empty());
  EXPECT_EQ(s.log().entries().size(), 0u);
}

TEST(Experiment, TogglerAlternates) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x);
  EXPECT_EQ(names(x, s.experiment(word(x, {"send", "send"}))),
            (std::vector<std::string>{"yes", "no"}));
}

TEST(StepExperiment, ContinuesTheLiveSession) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x);
  s.experiment(word(x, {"send"}));
  EXPECT_EQ(x.outputs().name(s.step(*x.inputs().find("send"))), "no");
}

TEST(StepExperiment, AfterEmptyExperiment) {
  auto x = sample_component("constant_yes.comp");
  auto s = bare_session(x);
  s.experiment({});
  EXPECT_EQ(x.outputs().name(s.step(*x.inputs().find("send"))), "yes");
}

TEST(StepExperiment, RejectsForeignInput) {
  auto x = sample_component("constant_yes.comp");
  auto s = bare_session(x);
  s.experiment({});
  EXPECT_THROW(s.step(InputId{7}), AlphabetViolation);
}

TEST(StepExperiment, NeedsALiveSession) {
  auto x = sample_component("constant_yes.comp");
  auto s = bare_session(x);
  EXPECT_THROW(s.step(*x.inputs().find("send")), Error);
}

TEST(IsRun, Examples) {
  auto yes = sample_component("constant_yes.comp");
  auto tog = sample_component("toggler.comp");
  auto sy = bare_session(yes);
  auto st = bare_session(tog);
  EXPECT_TRUE(sy.is_run(trace(yes, {{"send", "yes"}, {"send", "yes"}})));
  EXPECT_FALSE(sy.is_run(trace(yes, {{"send", "no"}})));
  EXPECT_TRUE(st.is_run(trace(tog, {{"send", "yes"}, {"send", "no"}, {"send", "yes"}})));
}

TEST(IsRun, StopsAtFirstMismatch) {
  auto yes = sample_component("constant_yes.comp");
  std::vector<std::vector<std::string>> sent;
  HostSystem m = testing::sample_system("sys_b.sys");
  auto s = testing::recording_session(m, yes, 1, &sent, /*cache=*/false);
  std::vector<Communication> t;
  for (const char* b : {"no", "yes", "yes"}) {
    t.push_back({*m.inputs().find("send"), *m.outputs().find(b)});
  }
  EXPECT_FALSE(s.is_run(t));
  ASSERT_EQ(sent.size(), 1u);
  EXPECT_EQ(sent[0].size(), 1u);
}

// Says yes exactly once, then no forever.
class FlakyBackend final : public ComponentBackend {
 public:
  void reset() override {}
  std::string step(const std::string&) override {
    bool first = !answered_;
    answered_ = true;
    return first ? "yes" : "no";
  }

 private:
  bool answered_ = false;
};

TEST(Determinism, ReplayMismatchIsReported) {
  Alphabet<InputId> in;
  in.add("a");
  in.add("b");
  Alphabet<OutputId> out;
  out.add("no");
  out.add("yes");
  ComponentSession s(std::make_unique<FlakyBackend>(), in, out, 1);
  std::vector<InputId> a{InputId{0}};
  std::vector<InputId> ab{InputId{0}, InputId{1}};
  s.experiment(a);
  EXPECT_THROW(
      {
        s.experiment(std::vector<InputId>{InputId{1}});
        s.experiment(ab);
      },
      DeterminismViolation);
}

TEST(Determinism, UncachedReplayIsCheckedToo) {
  Alphabet<InputId> in;
  in.add("a");
  Alphabet<OutputId> out;
  out.add("no");
  out.add("yes");
  SessionOptions o;
  o.cache = false;
  ComponentSession s(std::make_unique<FlakyBackend>(), in, out, 1, o);
  std::vector<InputId> a{InputId{0}};
  s.experiment(a);
  EXPECT_THROW(s.experiment(a), DeterminismViolation);
}

TEST(Session, StateBoundMustBePositive) {
  auto x = sample_component("constant_yes.comp");
  EXPECT_THROW(ComponentSession(std::make_unique<ReferenceBackend>(x), x.inputs(), x.outputs(), 0),
               ValidationError);
}

TEST(Session, LengthLimitRaisesBoundViolation) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x);
  s.set_length_limit(2);
  EXPECT_NO_THROW(s.experiment(word(x, {"send", "send"})));
  EXPECT_THROW(s.experiment(word(x, {"send", "send", "send"})), BoundViolation);
}

std::vector<std::vector<InputId>> all_words(std::size_t inputs, std::size_t max_len) {
  std::vector<std::vector<InputId>> out{{}};
  std::vector<std::vector<InputId>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<InputId>> next;
    for (const auto& w : layer) {
      for (std::uint32_t a = 0; a < inputs; ++a) {
        auto v = w;
        v.push_back(InputId{a});
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

TEST(Cache, NoSequenceIsTransmittedTwice) {
  auto x = sample_component("toggler.comp");
  std::vector<std::vector<std::string>> sent;
  HostSystem m = testing::sample_system("sys_b.sys");
  auto s = testing::recording_session(m, x, 2, &sent);
  auto words = all_words(2, 4);
  for (int round = 0; round < 2; ++round) {
    for (const auto& w : words) s.experiment(w);
  }
  // Every backend step extends one prefix; collect the prefixes it produced.
  std::set<std::vector<std::string>> seen;
  std::size_t steps = 0;
  for (const auto& run : sent) {
    std::vector<std::string> p;
    for (const auto& a : run) {
      p.push_back(a);
      if (seen.contains(p)) continue;
      seen.insert(p);
      ++steps;
    }
  }
  EXPECT_EQ(s.log().entries().size(), steps);
  std::set<std::vector<std::string>> logged;
  for (const auto& e : s.log().entries()) EXPECT_TRUE(logged.insert(e.inputs).second);
  EXPECT_LE(s.log().resets(), logged.size());
}

TEST(Cache, ResetCountIsMonotone) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x, /*cache=*/false);
  std::uint64_t last = 0;
  for (const auto& w : all_words(2, 3)) {
    s.experiment(w);
    EXPECT_GE(s.log().resets(), last);
    last = s.log().resets();
  }
  for (std::size_t i = 1; i < s.log().entries().size(); ++i) {
    EXPECT_GE(s.log().entries()[i].resets, s.log().entries()[i - 1].resets);
  }
}

TEST(Cache, LoggedOutputsArePrefixConsistent) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x);
  for (const auto& w : all_words(2, 4)) s.experiment(w);
  const auto& e = s.log().entries();
  for (const auto& p : e) {
    for (const auto& q : e) {
      if (p.inputs.size() > q.inputs.size()) continue;
      if (!std::equal(p.inputs.begin(), p.inputs.end(), q.inputs.begin())) continue;
      EXPECT_TRUE(std::equal(p.outputs.begin(), p.outputs.end(), q.outputs.begin()));
    }
  }
}

TEST(Cache, IsRunAgreesWithUncachedUpToLengthEight) {
  auto x = sample_component("toggler.comp");
  auto cached = bare_session(x, true);
  auto plain = bare_session(x, false);
  std::size_t checked = 0;
  for (const auto& w : all_words(2, 8)) {
    // Every output labelling of w: 2^|w| traces.
    for (std::uint32_t mask = 0; mask < (1u << w.size()); ++mask) {
      std::vector<Communication> t;
      for (std::size_t i = 0; i < w.size(); ++i) t.push_back({w[i], OutputId{(mask >> i) & 1u}});
      ASSERT_EQ(cached.is_run(t), plain.is_run(t));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 87381u);  // sum of 4^len for len 0..8
}

TEST(Log, WritesJsonLines) {
  auto x = sample_component("toggler.comp");
  auto s = bare_session(x);
  s.experiment(word(x, {"send", "ack"}));
  std::ostringstream os;
  s.log().write_jsonl(os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["seq"], nlohmann::json::array({"send"}));
  EXPECT_EQ(j["out"], nlohmann::json::array({"yes"}));
  EXPECT_EQ(j["resets"], 1);
  std::getline(in, line);
  j = nlohmann::json::parse(line);
  EXPECT_EQ(j["seq"], nlohmann::json::array({"send", "ack"}));
  EXPECT_EQ(j["out"], nlohmann::json::array({"yes", "yes"}));
}

TEST(ProcessBackend, GarbageReplyIsAnAdapterFailure) {
  ProcessBackend p("while read l; do echo garbage; done", std::chrono::milliseconds(2000));
  EXPECT_THROW(p.reset(), AdapterFailure);
}

TEST(ProcessBackend, SilenceTimesOut) {
  ProcessBackend p("sleep 10", std::chrono::milliseconds(200));
  auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(p.reset(), AdapterFailure);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(ProcessBackend, SpeaksTheWireProtocol) {
  std::string cmd = std::string(BBMC_CLI) + " serve --component " +
                    testing::sample_path("toggler.comp");
  ProcessBackend p(cmd, std::chrono::milliseconds(5000));
  p.reset();
  EXPECT_EQ(p.step("send"), "yes");
  EXPECT_EQ(p.step("send"), "no");
  p.reset();
  EXPECT_EQ(p.step("send"), "yes");
}

TEST(ProcessBackend, ExitedChildIsAnAdapterFailure) {
  ProcessBackend p("true", std::chrono::milliseconds(2000));
  EXPECT_THROW(p.reset(), AdapterFailure);
}

}  // namespace
}  // namespace bbmc
