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

#include "slist/evaluation.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

std::vector<std::size_t> NormalizedCutoffs(std::vector<std::size_t> cutoffs) {
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  return cutoffs;
}

std::vector<ItemIndex> DistinctItems(std::span<const ItemIndex> items) {
  std::vector<ItemIndex> out(items.begin(), items.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kHitRate:
      return "HR";
    case Metric::kMrr:
      return "MRR";
    case Metric::kRecall:
      return "Recall";
    case Metric::kMap:
      return "MAP";
  }
  return "?";
}

std::optional<Metric> ParseMetric(std::string_view name) {
  std::string lower(name);
  for (char& c : lower)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "hr" || lower == "hit" || lower == "hitrate")
    return Metric::kHitRate;
  if (lower == "mrr") return Metric::kMrr;
  if (lower == "recall" || lower == "r") return Metric::kRecall;
  if (lower == "map") return Metric::kMap;
  return std::nullopt;
}

void Validate(const EvalConfig& config) {
  if (config.cutoffs.empty())
    throw Error(ErrorCode::kUsage, "no cutoffs given");
  if (config.metrics.empty())
    throw Error(ErrorCode::kUsage, "no metrics given");
  for (std::size_t k : config.cutoffs) {
    if (k == 0) throw Error(ErrorCode::kUsage, "cutoffs must be >= 1");
  }
}

std::optional<std::size_t> RankOf(const Ranking& ranking, ItemIndex target) {
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    if (ranking[r].item == target) return r + 1;
  }
  return std::nullopt;
}

double HitAt(std::optional<std::size_t> rank, std::size_t k) {
  return rank && *rank <= k ? 1.0 : 0.0;
}

double MrrAt(std::optional<std::size_t> rank, std::size_t k) {
  return rank && *rank <= k ? 1.0 / static_cast<double>(*rank) : 0.0;
}

RecallMap RecallMapAt(const Ranking& ranking,
                      std::span<const ItemIndex> relevant, std::size_t k,
                      MapDenominator denominator) {
  const std::vector<ItemIndex> truth = DistinctItems(relevant);
  if (truth.empty()) throw Error(ErrorCode::kUsage, "empty relevant set");
  const std::size_t depth = std::min(k, ranking.size());
  std::size_t hits = 0;
  double precision_sum = 0.0;
  for (std::size_t p = 0; p < depth; ++p) {
    if (std::binary_search(truth.begin(), truth.end(), ranking[p].item)) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(p + 1);
    }
  }
  const double size = static_cast<double>(truth.size());
  const double map_norm = denominator == MapDenominator::kRelevant
                              ? size
                              : static_cast<double>(std::min(k, truth.size()));
  return RecallMap{static_cast<double>(hits) / size, precision_sum / map_norm};
}

std::vector<std::vector<double>> IterateSession(const ItemModel& model,
                                                const Session& session,
                                                const EvalConfig& config) {
  Validate(config);
  if (session.items.size() < 2) {
    throw Error(ErrorCode::kData, "evaluation needs sessions of length >= 2");
  }
  const std::size_t max_k =
      *std::max_element(config.cutoffs.begin(), config.cutoffs.end());
  const std::span<const ItemIndex> items(session.items);
  std::vector<std::vector<double>> steps;
  steps.reserve(items.size() - 1);
  for (std::size_t t = 1; t < items.size(); ++t) {
    const SessionState state = SessionState::FromItems(items.first(t));
    Ranking ranking;
    if (!state.items.empty()) ranking = Recommend(model, state, max_k);
    const ItemIndex target = items[t];
    const auto rank =
        IsKnownItem(target) ? RankOf(ranking, target) : std::nullopt;
    const auto relevant = items.subspan(t);

    std::vector<double> row;
    row.reserve(config.metrics.size() * config.cutoffs.size());
    for (Metric metric : config.metrics) {
      for (std::size_t k : config.cutoffs) {
        switch (metric) {
          case Metric::kHitRate:
            row.push_back(HitAt(rank, k));
            break;
          case Metric::kMrr:
            row.push_back(MrrAt(rank, k));
            break;
          case Metric::kRecall:
            row.push_back(
                RecallMapAt(ranking, relevant, k, config.map_denominator)
                    .recall);
            break;
          case Metric::kMap:
            row.push_back(
                RecallMapAt(ranking, relevant, k, config.map_denominator).map);
            break;
        }
      }
    }
    steps.push_back(std::move(row));
  }
  return steps;
}

double EvalReport::Get(Metric metric, std::size_t cutoff) const {
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    if (metrics[m] != metric) continue;
    for (std::size_t c = 0; c < cutoffs.size(); ++c) {
      if (cutoffs[c] == cutoff) return means[m * cutoffs.size() + c];
    }
  }
  throw Error(ErrorCode::kUsage, std::string("metric ") +
                                     std::string(MetricName(metric)) + "@" +
                                     std::to_string(cutoff) + " not in report");
}

EvalReport EvaluateCorpus(const ItemModel& model, const SessionCorpus& test,
                          const EvalConfig& config) {
  Validate(config);
  if (test.empty()) throw Error(ErrorCode::kData, "empty test corpus");
  if (!(test.vocab == model.vocab)) {
    throw Error(ErrorCode::kData,
                "test corpus vocabulary does not match the model vocabulary");
  }
  EvalConfig normalized = config;
  normalized.cutoffs = NormalizedCutoffs(config.cutoffs);

  EvalReport report;
  report.metrics = normalized.metrics;
  report.cutoffs = normalized.cutoffs;
  std::vector<double> sums(report.metrics.size() * report.cutoffs.size(), 0.0);
  for (const Session& session : test.sessions) {
    if (session.items.size() < 2) continue;
    ++report.sessions;
    for (const auto& step : IterateSession(model, session, normalized)) {
      for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += step[i];
      ++report.steps;
    }
  }
  if (report.steps == 0) {
    throw Error(ErrorCode::kData, "test corpus has no prediction steps");
  }
  report.means.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    report.means[i] = sums[i] / static_cast<double>(report.steps);
  }
  return report;
}

std::string FormatReportTable(const EvalReport& report) {
  std::ostringstream out;
  char buf[64];
  out << "metric ";
  for (std::size_t k : report.cutoffs) {
    std::snprintf(buf, sizeof(buf), " %9s", ("@" + std::to_string(k)).c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    std::snprintf(buf, sizeof(buf), "%-7s",
                  std::string(MetricName(report.metrics[m])).c_str());
    out << buf;
    for (std::size_t c = 0; c < report.cutoffs.size(); ++c) {
      std::snprintf(buf, sizeof(buf), " %9.4f",
                    report.means[m * report.cutoffs.size() + c]);
      out << buf;
    }
    out << '\n';
  }
  out << "sessions " << report.sessions << ", steps " << report.steps << '\n';
  return out.str();
}

std::string FormatReportKeyValue(const EvalReport& report) {
  std::ostringstream out;
  out << "sessions=" << report.sessions << '\n';
  out << "steps=" << report.steps << '\n';
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    for (std::size_t c = 0; c < report.cutoffs.size(); ++c) {
      out << MetricName(report.metrics[m]) << '.' << report.cutoffs[c] << '='
          << FormatDouble(report.means[m * report.cutoffs.size() + c]) << '\n';
    }
  }
  return out.str();
}

}  // namespace slist
