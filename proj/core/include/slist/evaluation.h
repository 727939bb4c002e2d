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

#ifndef SLIST_EVALUATION_H_
#define SLIST_EVALUATION_H_

// Iterative-revealing evaluation. A test session of length L yields L-1
// prediction steps: after revealing s_1..s_t the model ranks items, HR and
// MRR are scored against the next item s_{t+1}, and Recall and MAP against
// the distinct remaining items s_{t+1}..s_L. Reports micro-average over
// all steps of all sessions.
//
// Items unknown to the model are dropped from the revealed prefix and can
// never be hit as targets. A step whose revealed prefix holds no known item
// is scored as a miss.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slist/recommender.h"
#include "slist/sessions.h"
#include "slist/solver.h"

namespace slist {

enum class Metric { kHitRate, kMrr, kRecall, kMap };

std::string_view MetricName(Metric metric);  // "HR", "MRR", "Recall", "MAP"
std::optional<Metric> ParseMetric(std::string_view name);  // case-insensitive

// Denominator of average precision: the relevant-set size, or
// min(k, |relevant|).
enum class MapDenominator { kRelevant, kMinCutoff };

struct EvalConfig {
  std::vector<std::size_t> cutoffs{5, 10, 20};
  std::vector<Metric> metrics{Metric::kHitRate, Metric::kMrr, Metric::kRecall,
                              Metric::kMap};
  MapDenominator map_denominator = MapDenominator::kRelevant;
};

// Throws kUsage on empty metric/cutoff lists or a zero cutoff.
void Validate(const EvalConfig& config);

// 1-based position of `target` in `ranking`.
std::optional<std::size_t> RankOf(const Ranking& ranking, ItemIndex target);

double HitAt(std::optional<std::size_t> rank, std::size_t k);
double MrrAt(std::optional<std::size_t> rank, std::size_t k);

struct RecallMap {
  double recall = 0.0;
  double map = 0.0;
};

// `relevant` is treated as a set; it must be non-empty.
RecallMap RecallMapAt(const Ranking& ranking,
                      std::span<const ItemIndex> relevant, std::size_t k,
                      MapDenominator denominator = MapDenominator::kRelevant);

// One row per prediction step; values laid out metric-major in the order
// of config.metrics x config.cutoffs.
std::vector<std::vector<double>> IterateSession(const ItemModel& model,
                                                const Session& session,
                                                const EvalConfig& config);

struct EvalReport {
  std::vector<Metric> metrics;
  std::vector<std::size_t> cutoffs;
  std::vector<double> means;  // metric-major
  std::size_t steps = 0;
  std::size_t sessions = 0;

  double Get(Metric metric, std::size_t cutoff) const;
};

// Throws kData on an empty corpus or when its vocabulary differs from the
// model's.
EvalReport EvaluateCorpus(const ItemModel& model, const SessionCorpus& test,
                          const EvalConfig& config);

std::string FormatReportTable(const EvalReport& report);
// "sessions=..", "steps=..", then one "<METRIC>.<k>=<value>" line each.
std::string FormatReportKeyValue(const EvalReport& report);

}  // namespace slist

#endif  // SLIST_EVALUATION_H_
