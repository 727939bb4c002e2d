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

#ifndef SLIST_RECOMMENDER_H_
#define SLIST_RECOMMENDER_H_

// Next-item scoring: score = u' B, where u holds one entry per distinct
// consumed item, exp(-(|s| - p(i)) / delta_inf) at its most recent
// 1-based position p(i). Consumed items are not masked.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "slist/sessions.h"
#include "slist/solver.h"

namespace slist {

struct SessionState {
  std::vector<ItemIndex> items;     // known items consumed so far, in order
  std::size_t unknown_skipped = 0;  // out-of-vocabulary events dropped

  // Keeps known items and counts the rest as skipped.
  static SessionState FromItems(std::span<const ItemIndex> items);
};

struct ScoredItem {
  ItemIndex item = 0;
  double score = 0.0;

  bool operator==(const ScoredItem&) const = default;
};

// Sorted by score descending, then item index ascending.
using Ranking = std::vector<ScoredItem>;

Eigen::VectorXd InputVector(const SessionState& state, double delta_inf,
                            Eigen::Index n);

// A cold-start (empty) session scores all zeros.
Eigen::VectorXd Score(const ItemModel& model, const SessionState& state);
// Same, for an already-built input vector.
Eigen::VectorXd Score(const ItemModel& model, const Eigen::VectorXd& input);

Ranking TopN(const Eigen::VectorXd& scores, std::size_t count);

// Score + TopN.
Ranking Recommend(const ItemModel& model, const SessionState& state,
                  std::size_t count);

}  // namespace slist

#endif  // SLIST_RECOMMENDER_H_
