/*
 * Copyright 2026 The slist Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "slist/synthetic.h"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "slist/error.h"
#include "slist/evaluation.h"
#include "slist/representation.h"
#include "slist/solver.h"

namespace slist {
namespace {

std::string Render(const SynthParams& params) {
  std::ostringstream out;
  WriteLog(out, GenerateSessions(params));
  return out.str();
}

TEST(SyntheticTest, FixedSeedIsReproducible) {
  SynthParams params;
  params.num_sessions = 200;
  EXPECT_EQ(Render(params), Render(params));
  SynthParams other = params;
  other.seed = 43;
  EXPECT_NE(Render(params), Render(other));
}

TEST(SyntheticTest, ZeroSessionsGivesHeaderOnly) {
  SynthParams params;
  params.num_sessions = 0;
  EXPECT_EQ(Render(params), "SessionId\tItemId\tTime\n");
}

TEST(SyntheticTest, OutputParsesBackAsALog) {
  SynthParams params;
  params.num_sessions = 50;
  std::istringstream in(Render(params));
  const ParsedLog log = ParseLog(in);
  EXPECT_EQ(log.report.malformed, 0u);
  EXPECT_EQ(log.events, GenerateSessions(params));
}

TEST(SyntheticTest, LengthsAndItemRangeRespected) {
  SynthParams params;
  params.num_sessions = 300;
  params.num_items = 40;
  params.min_length = 3;
  params.max_length = 5;
  params.branching = 4;
  params.bundle_size = 8;
  std::map<std::string, int> lengths;
  std::set<std::string> items;
  for (const Event& e : GenerateSessions(params)) {
    ++lengths[e.session_id];
    items.insert(e.item_id);
  }
  EXPECT_EQ(lengths.size(), 300u);
  for (const auto& [id, len] : lengths) {
    EXPECT_GE(len, 3);
    EXPECT_LE(len, 5);
  }
  EXPECT_LE(items.size(), 40u);
}

TEST(SyntheticTest, BundlesWithoutRepeatsStayInsideOneBundle) {
  SynthParams params;
  params.structure = SynthStructure::kCooccurrence;
  params.num_sessions = 100;
  params.num_items = 30;
  params.bundle_size = 10;
  params.max_length = 10;
  std::map<std::string, std::set<std::string>> sessions;
  for (const Event& e : GenerateSessions(params)) {
    sessions[e.session_id].insert(e.item_id);
  }
  // Every session is a set of distinct items (no repeats below bundle size).
  std::map<std::string, int> counts;
  for (const Event& e : GenerateSessions(params)) ++counts[e.session_id];
  for (const auto& [id, set] : sessions) {
    EXPECT_EQ(static_cast<int>(set.size()), counts[id]);
  }
}

TEST(SyntheticTest, WithReplacementBundlesRepeatItems) {
  SynthParams params;
  params.structure = SynthStructure::kCooccurrence;
  params.bundle_with_replacement = true;
  params.num_sessions = 200;
  params.bundle_size = 5;
  params.min_length = 8;
  params.max_length = 8;
  std::map<std::string, std::set<std::string>> sessions;
  for (const Event& e : GenerateSessions(params)) {
    sessions[e.session_id].insert(e.item_id);
  }
  for (const auto& [id, set] : sessions) EXPECT_LE(set.size(), 5u);
}

TEST(SyntheticTest, SequentialChainsFavourTransitionModel) {
  SynthParams params;
  params.structure = SynthStructure::kSequential;
  params.num_sessions = 1500;
  params.num_items = 200;
  params.branching = 25;
  PreprocessOptions options;
  options.min_item_support = 1;
  const CorpusSplit split =
      SplitByDays(Preprocess(GenerateSessions(params), options), 5, 0);
  const DesignMatrices dm = Assemble(split.train, DecayParams{});
  EvalConfig config;
  config.cutoffs = {20};
  config.metrics = {Metric::kHitRate};
  const double slis =
      EvaluateCorpus(SolveSlis(dm, HyperParams{}), split.test, config)
          .Get(Metric::kHitRate, 20);
  const double slit =
      EvaluateCorpus(SolveSlit(dm, HyperParams{}), split.test, config)
          .Get(Metric::kHitRate, 20);
  EXPECT_GT(slit, slis);
}

TEST(SyntheticTest, ValidateRejectsBadShapes) {
  SynthParams params;
  params.min_length = 5;
  params.max_length = 2;
  EXPECT_THROW(Validate(params), Error);
  params = SynthParams{};
  params.branching = params.num_items;
  EXPECT_THROW(Validate(params), Error);
  params = SynthParams{};
  params.sequential_share = 1.5;
  EXPECT_THROW(Validate(params), Error);
  EXPECT_EQ(ParseSynthStructure("sequential"), SynthStructure::kSequential);
  EXPECT_FALSE(ParseSynthStructure("chains"));
}

}  // namespace
}  // namespace slist
