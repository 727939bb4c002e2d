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

#ifndef SLIST_TOOLS_COMMANDS_H_
#define SLIST_TOOLS_COMMANDS_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "slist/evaluation.h"
#include "slist/solver.h"
#include "slist_tools/config.h"

namespace slist::tools {

// Each command reads what it needs from the configuration, writes its
// files, prints a short summary to `out`, and reports failures by
// throwing slist::Error.

struct PreprocessSummary {
  std::size_t rows = 0;
  std::size_t malformed = 0;
  std::size_t train_sessions = 0;
  std::size_t valid_sessions = 0;
  std::size_t test_sessions = 0;
  std::size_t items = 0;
};
PreprocessSummary RunPreprocess(const RunConfig& config, std::ostream& out);

struct TrainSummary {
  Eigen::Index items = 0;     // n
  Eigen::Index sessions = 0;  // m
  Eigen::Index partial = 0;   // m'
  double assembly_seconds = 0.0;
  SolveStats solve;
  double total_seconds = 0.0;
};
TrainSummary RunTrain(const RunConfig& config, std::ostream& out);

EvalReport RunEval(const RunConfig& config, std::ostream& out);

struct RecommendSummary {
  std::size_t sessions = 0;
  std::size_t cold = 0;  // no known item to condition on; nothing emitted
  std::size_t rows = 0;
};
RecommendSummary RunRecommend(const RunConfig& config, std::ostream& out);

struct GridPoint {
  HyperParams hyper;
  double score = 0.0;
  EvalReport report;
};
// Points ranked best first; ties keep grid order.
std::vector<GridPoint> RunGrid(const RunConfig& config, std::ostream& out);

std::size_t RunSynth(const RunConfig& config, std::ostream& out);

}  // namespace slist::tools

#endif  // SLIST_TOOLS_COMMANDS_H_
