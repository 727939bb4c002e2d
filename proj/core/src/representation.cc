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

#include "slist/representation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

using Triplet = Eigen::Triplet<double>;

// Stored values stay strictly positive even when the decay underflows.
double PositiveDecay(double exponent) {
  return std::max(std::exp(exponent), std::numeric_limits<double>::min());
}

void CheckSession(const Session& s, std::size_t index, std::size_t n) {
  if (s.items.size() < 2) {
    throw Error(ErrorCode::kData, "session " + std::to_string(index) +
                                      " has fewer than two items");
  }
  for (ItemIndex item : s.items) {
    if (!IsKnownItem(item) || static_cast<std::size_t>(item) >= n) {
      throw Error(ErrorCode::kData, "session " + std::to_string(index) +
                                        " references an unknown item");
    }
  }
}

// Appends (row, item, value) entries for `entries`, collapsing repeated
// items to their maximum value.
void AppendRow(Eigen::Index row,
               std::vector<std::pair<ItemIndex, double>>& entries,
               std::vector<Triplet>& triplets) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double value = entries[i].second;
    while (j + 1 < entries.size() && entries[j + 1].first == entries[i].first) {
      ++j;
      value = std::max(value, entries[j].second);
    }
    triplets.emplace_back(row, entries[i].first, value);
    i = j + 1;
  }
}

SparseRows FromTriplets(Eigen::Index rows, Eigen::Index cols,
                        const std::vector<Triplet>& triplets) {
  SparseRows m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

void Validate(const DecayParams& decay) {
  for (const auto& [name, value] : {std::pair{"delta_time", decay.time_days},
                                    std::pair{"delta_pos", decay.position},
                                    std::pair{"delta_inf", decay.inference}}) {
    if (!(value > 0.0)) {
      throw Error(
          ErrorCode::kUsage,
          std::string(name) + " must be positive, got " + FormatDouble(value));
    }
  }
}

SparseRows BuildFull(const SessionCorpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kData, "empty corpus");
  const std::size_t n = corpus.num_items();
  std::vector<Triplet> triplets;
  std::vector<std::pair<ItemIndex, double>> entries;
  for (std::size_t i = 0; i < corpus.sessions.size(); ++i) {
    const Session& s = corpus.sessions[i];
    CheckSession(s, i, n);
    entries.clear();
    for (ItemIndex item : s.items) entries.emplace_back(item, 1.0);
    AppendRow(static_cast<Eigen::Index>(i), entries, triplets);
  }
  return FromTriplets(static_cast<Eigen::Index>(corpus.sessions.size()),
                      static_cast<Eigen::Index>(n), triplets);
}

PartialMatrices BuildPartial(const SessionCorpus& corpus, double delta_pos,
                             bool decay_future) {
  if (corpus.empty()) throw Error(ErrorCode::kData, "empty corpus");
  if (!(delta_pos > 0.0)) {
    throw Error(ErrorCode::kUsage, "delta_pos must be positive");
  }
  const std::size_t n = corpus.num_items();
  PartialMatrices out;
  std::vector<Triplet> past, future;
  std::vector<std::pair<ItemIndex, double>> entries;
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < corpus.sessions.size(); ++i) {
    const Session& s = corpus.sessions[i];
    CheckSession(s, i, n);
    const std::size_t len = s.items.size();
    // `anchor` is the 0-based position of the first future item.
    for (std::size_t anchor = 1; anchor < len; ++anchor, ++row) {
      entries.clear();
      for (std::size_t p = 0; p < anchor; ++p) {
        const double gap = static_cast<double>(anchor - p);
        entries.emplace_back(s.items[p], PositiveDecay(-gap / delta_pos));
      }
      AppendRow(row, entries, past);

      entries.clear();
      for (std::size_t q = anchor; q < len; ++q) {
        const double gap = static_cast<double>(q - anchor);
        entries.emplace_back(
            s.items[q], decay_future ? PositiveDecay(-gap / delta_pos) : 1.0);
      }
      AppendRow(row, entries, future);
      out.row_session.push_back(i);
    }
  }
  out.past = FromTriplets(row, static_cast<Eigen::Index>(n), past);
  out.future = FromTriplets(row, static_cast<Eigen::Index>(n), future);
  return out;
}

Eigen::VectorXd SessionTimeWeights(const SessionCorpus& corpus,
                                   double delta_time) {
  if (!(delta_time > 0.0)) {
    throw Error(ErrorCode::kUsage, "delta_time must be positive");
  }
  Eigen::VectorXd weights(static_cast<Eigen::Index>(corpus.sessions.size()));
  for (std::size_t i = 0; i < corpus.sessions.size(); ++i) {
    const double gap_days =
        (corpus.t_max - corpus.sessions[i].session_time) / kSecondsPerDay;
    // sqrt(exp(-gap / delta)) == exp(-gap / (2 delta)).
    weights[static_cast<Eigen::Index>(i)] =
        std::sqrt(PositiveDecay(-gap_days / delta_time));
  }
  return weights;
}

DesignMatrices Assemble(const SessionCorpus& corpus, const DecayParams& decay) {
  Validate(decay);
  DesignMatrices dm;
  dm.full = BuildFull(corpus);
  PartialMatrices partial =
      BuildPartial(corpus, decay.position, decay.decay_future);
  dm.past = std::move(partial.past);
  dm.future = std::move(partial.future);
  dm.partial_session = std::move(partial.row_session);
  dm.full_weights = SessionTimeWeights(corpus, decay.time_days);
  dm.partial_weights.resize(
      static_cast<Eigen::Index>(dm.partial_session.size()));
  for (std::size_t r = 0; r < dm.partial_session.size(); ++r) {
    dm.partial_weights[static_cast<Eigen::Index>(r)] =
        dm.full_weights[static_cast<Eigen::Index>(dm.partial_session[r])];
  }
  dm.vocab = corpus.vocab;
  return dm;
}

void WriteTriplets(std::ostream& out, const SparseRows& matrix) {
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
    for (SparseRows::InnerIterator it(matrix, r); it; ++it) {
      out << it.row() << '\t' << it.col() << '\t' << FormatDouble(it.value())
          << '\n';
    }
  }
}

}  // namespace slist
