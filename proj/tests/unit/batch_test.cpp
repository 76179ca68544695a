// Copyright 2026 The pickstuff Authors
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

#include "pickstuff/batch.hpp"

#include <gtest/gtest.h>

#include "pickstuff/harness.hpp"

namespace pickstuff {
namespace {

TEST(ParseBaseline, Names) {
  EXPECT_EQ(parse_baseline("oracle"), Baseline::kOracle);
  EXPECT_EQ(parse_baseline("frozen"), Baseline::kFrozen);
  EXPECT_EQ(parse_baseline("random"), Baseline::kRandom);
  EXPECT_THROW(parse_baseline("llm"), std::invalid_argument);
}

TEST(Batch, ParallelMatchesSerial) {
  for (Mode mode : {Mode::kZero, Mode::kFinite}) {
    ScriptConfig c;
    c.mode = mode;
    c.master_seed = 11;
    for (Baseline b : {Baseline::kOracle, Baseline::kFrozen, Baseline::kRandom}) {
      EXPECT_EQ(evaluate_baseline_serial(c, b, 5, 500, 3), evaluate_baseline_parallel(c, b, 5, 500, 3));
    }
  }
}

// The narration-free kernel must agree with the full harness turn by turn.
TEST(Batch, AgreesWithRunExperiment) {
  for (Mode mode : {Mode::kZero, Mode::kFinite}) {
    for (const char* kind : {"oracle", "frozen", "random"}) {
      ExperimentConfig c;
      c.mode = mode;
      c.n_turns = 40;
      c.master_seed = 5;
      c.agent.kind = kind;
      c.agent.seed = 19;
      const auto report = run_experiment(c);
      const auto counts = evaluate_baseline_serial(c.script_config(), parse_baseline(kind), 0, 40, 19);
      ASSERT_EQ(counts.size(), report.turns.size());
      for (std::size_t t = 0; t < counts.size(); ++t) EXPECT_EQ(counts[t], report.turns[t].correct_count) << kind;
    }
  }
}

TEST(Batch, OracleIsPerfect) {
  ScriptConfig c;
  c.mode = Mode::kFinite;
  for (int v : evaluate_baseline_parallel(c, Baseline::kOracle, 0, 200)) ASSERT_EQ(v, c.n_users);
}

}  // namespace
}  // namespace pickstuff
