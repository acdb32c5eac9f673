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

#include "support.hpp"

namespace bbmc {
namespace {

TEST(Differential, FirstHundredSeedsAgree) {
  DifferentialOptions o;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (const auto& c : run_seed(seed, o)) {
      ASSERT_TRUE(c.agrees()) << describe_case(c);
      if (c.length_bound > 0) ASSERT_LE(c.max_length, c.length_bound) << describe_case(c);
    }
  }
}

TEST(Differential, BrokenEngineIsCaught) {
  Engines broken;
  broken.ctl = [](const HostSystem& m, ComponentSession& x, StateId s0, const FormulaPtr& f,
                  const CheckOptions& o) {
    auto r = check_ctl(m, x, s0, f, o);
    return r.decided_by_labels ? r.holds : !r.holds;
  };
  broken.liveness = [](const HostSystem& m, ComponentSession& x, StateId s0, StateId sf,
                       const CheckOptions& o) {
    auto r = check_liveness(m, x, s0, sf, o);
    return r.definite ? r.holds : !r.holds;
  };
  DifferentialOptions o;
  std::size_t failures = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (const auto& c : run_seed(seed, o, broken)) failures += c.failure();
  }
  EXPECT_GT(failures, 10u);
}

TEST(Differential, UnderstatedBoundIsClassifiedSeparately) {
  DifferentialOptions o;
  o.state_bound = 1;
  std::size_t violations = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    for (const auto& c : run_seed(seed, o)) {
      if (c.understated) {
        EXPECT_FALSE(c.failure()) << describe_case(c);
        violations += c.bound_violation();
      } else {
        EXPECT_TRUE(c.agrees()) << describe_case(c);
      }
    }
  }
  EXPECT_GT(violations, 0u);
}

TEST(Differential, SeedsAreReproducible) {
  DifferentialOptions o;
  for (std::uint64_t seed : {3u, 77u, 401u}) {
    auto a = run_seed(seed, o);
    auto b = run_seed(seed, o);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].query, b[i].query);
      EXPECT_EQ(a[i].engine, b[i].engine);
      EXPECT_EQ(a[i].experiments, b[i].experiments);
    }
  }
}

}  // namespace
}  // namespace bbmc
