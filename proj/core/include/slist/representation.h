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

#ifndef SLIST_REPRESENTATION_H_
#define SLIST_REPRESENTATION_H_

// Session design matrices.
//
// The full representation X has one binary row per session (its distinct
// items). The partial representation expands a session of length L into
// L-1 (past, future) row pairs, one per split point t = 2..L (1-based):
// past = items before t, future = items at or after t. Entries decay with
// their position gap to the anchor t,
//
//   value(i) = exp(-|p(i) - t| / delta_pos),
//
// so the last past item weighs exp(-1/delta_pos) and the first future item
// weighs 1. An item repeated inside one set keeps its occurrence nearest to
// the anchor.
//
// Row weights are sqrt of the session recency weight
// exp(-(t_max - t(s)) / delta_time), with the gap measured in days; every
// partial row inherits the weight of its session.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "slist/sessions.h"

namespace slist {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct DecayParams {
  double time_days = 8.0;  // delta_time, days
  double position = 1.0;   // delta_pos, positions
  double inference = 1.0;  // delta_inf, positions
  // When false, future rows keep a flat weight of 1 instead of decaying.
  bool decay_future = true;

  bool operator==(const DecayParams&) const = default;
};

// Throws kUsage unless every decay is > 0 (+inf disables that decay).
void Validate(const DecayParams& decay);

struct PartialMatrices {
  SparseRows past;
  SparseRows future;
  std::vector<std::size_t> row_session;  // originating session per row
};

struct DesignMatrices {
  SparseRows full;                  // m x n
  SparseRows past;                  // m' x n
  SparseRows future;                // m' x n
  Eigen::VectorXd full_weights;     // m
  Eigen::VectorXd partial_weights;  // m'
  std::vector<std::size_t> partial_session;
  Vocabulary vocab;

  Eigen::Index num_items() const { return full.cols(); }
  Eigen::Index num_sessions() const { return full.rows(); }
  Eigen::Index num_partial() const { return past.rows(); }
};

SparseRows BuildFull(const SessionCorpus& corpus);
PartialMatrices BuildPartial(const SessionCorpus& corpus, double delta_pos,
                             bool decay_future = true);
Eigen::VectorXd SessionTimeWeights(const SessionCorpus& corpus,
                                   double delta_time);

DesignMatrices Assemble(const SessionCorpus& corpus, const DecayParams& decay);

// Debug dump: one "row<TAB>col<TAB>value" line per stored entry.
void WriteTriplets(std::ostream& out, const SparseRows& matrix);

}  // namespace slist

#endif  // SLIST_REPRESENTATION_H_
