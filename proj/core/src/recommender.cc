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

#include "slist/recommender.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slist/error.h"

namespace slist {

SessionState SessionState::FromItems(std::span<const ItemIndex> items) {
  SessionState state;
  state.items.reserve(items.size());
  for (ItemIndex item : items) {
    if (IsKnownItem(item)) {
      state.items.push_back(item);
    } else {
      ++state.unknown_skipped;
    }
  }
  return state;
}

Eigen::VectorXd InputVector(const SessionState& state, double delta_inf,
                            Eigen::Index n) {
  if (!(delta_inf > 0.0)) {
    throw Error(ErrorCode::kUsage, "delta_inf must be positive");
  }
  Eigen::VectorXd input = Eigen::VectorXd::Zero(n);
  const std::size_t len = state.items.size();
  // Walk backwards so the most recent occurrence of each item wins.
  for (std::size_t k = len; k-- > 0;) {
    const ItemIndex item = state.items[k];
    if (!IsKnownItem(item) || item >= n) {
      throw Error(ErrorCode::kData, "session item outside model vocabulary");
    }
    if (input[item] != 0.0) continue;
    const double gap = static_cast<double>(len - 1 - k);
    input[item] = std::exp(-gap / delta_inf);
  }
  return input;
}

Eigen::VectorXd Score(const ItemModel& model, const Eigen::VectorXd& input) {
  const Eigen::Index n = model.num_items();
  if (input.size() != n) {
    throw Error(ErrorCode::kUsage, "input vector length does not match model");
  }
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (input[i] != 0.0) scores += input[i] * model.weights.row(i).transpose();
  }
  return scores;
}

Eigen::VectorXd Score(const ItemModel& model, const SessionState& state) {
  return Score(model, InputVector(state, model.hyper.decay.inference,
                                  model.num_items()));
}

Ranking TopN(const Eigen::VectorXd& scores, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::kUsage, "N must be at least 1");
  const std::size_t n = static_cast<std::size_t>(scores.size());
  const std::size_t keep = std::min(count, n);
  std::vector<ItemIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(),
                    order.begin() + static_cast<std::ptrdiff_t>(keep),
                    order.end(), [&](ItemIndex a, ItemIndex b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  Ranking ranking;
  ranking.reserve(keep);
  for (std::size_t r = 0; r < keep; ++r) {
    ranking.push_back(ScoredItem{order[r], scores[order[r]]});
  }
  return ranking;
}

Ranking Recommend(const ItemModel& model, const SessionState& state,
                  std::size_t count) {
  return TopN(Score(model, state), count);
}

}  // namespace slist
