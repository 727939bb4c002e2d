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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

using Rng = std::mt19937_64;

std::size_t Uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

class SequentialSource {
 public:
  SequentialSource(std::size_t num_items, std::size_t branching, Rng& rng)
      : successors_(num_items) {
    std::vector<std::size_t> others(num_items);
    std::iota(others.begin(), others.end(), 0);
    for (std::size_t item = 0; item < num_items; ++item) {
      std::shuffle(others.begin(), others.end(), rng);
      for (std::size_t k : others) {
        if (k == item) continue;
        successors_[item].push_back(k);
        if (successors_[item].size() == branching) break;
      }
    }
  }

  void Walk(std::size_t length, Rng& rng, std::vector<std::size_t>& out) const {
    std::size_t item = Uniform(rng, 0, successors_.size() - 1);
    for (std::size_t i = 0; i < length; ++i) {
      out.push_back(item);
      const auto& next = successors_[item];
      item = next[Uniform(rng, 0, next.size() - 1)];
    }
  }

 private:
  std::vector<std::vector<std::size_t>> successors_;
};

class BundleSource {
 public:
  BundleSource(std::size_t num_items, std::size_t bundle_size, Rng& rng) {
    std::vector<std::size_t> items(num_items);
    std::iota(items.begin(), items.end(), 0);
    std::shuffle(items.begin(), items.end(), rng);
    for (std::size_t start = 0; start < num_items; start += bundle_size) {
      const std::size_t end = std::min(num_items, start + bundle_size);
      bundles_.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(start),
                            items.begin() + static_cast<std::ptrdiff_t>(end));
    }
  }

  void Draw(std::size_t length, bool with_replacement, Rng& rng,
            std::vector<std::size_t>& out) const {
    std::vector<std::size_t> bundle =
        bundles_[Uniform(rng, 0, bundles_.size() - 1)];
    if (with_replacement) {
      for (std::size_t i = 0; i < length; ++i) {
        out.push_back(bundle[Uniform(rng, 0, bundle.size() - 1)]);
      }
      return;
    }
    std::shuffle(bundle.begin(), bundle.end(), rng);
    for (std::size_t i = 0; i < length; ++i) {
      // Beyond the bundle size, fall back to sampling with replacement.
      out.push_back(i < bundle.size()
                        ? bundle[i]
                        : bundle[Uniform(rng, 0, bundle.size() - 1)]);
    }
  }

 private:
  std::vector<std::vector<std::size_t>> bundles_;
};

}  // namespace

std::string_view SynthStructureName(SynthStructure structure) {
  switch (structure) {
    case SynthStructure::kSequential:
      return "sequential";
    case SynthStructure::kCooccurrence:
      return "cooccurrence";
    case SynthStructure::kMixed:
      return "mixed";
  }
  return "?";
}

std::optional<SynthStructure> ParseSynthStructure(std::string_view name) {
  for (SynthStructure s :
       {SynthStructure::kSequential, SynthStructure::kCooccurrence,
        SynthStructure::kMixed}) {
    if (SynthStructureName(s) == name) return s;
  }
  return std::nullopt;
}

void Validate(const SynthParams& p) {
  if (p.num_items < 2) throw Error(ErrorCode::kUsage, "need at least 2 items");
  if (p.min_length < 1 || p.min_length > p.max_length) {
    throw Error(ErrorCode::kUsage, "need 1 <= min_length <= max_length");
  }
  if (p.branching < 1 || p.branching >= p.num_items) {
    throw Error(ErrorCode::kUsage, "branching must lie in [1, num_items)");
  }
  if (p.bundle_size < 1)
    throw Error(ErrorCode::kUsage, "bundle_size must be >= 1");
  if (!(p.sequential_share >= 0.0 && p.sequential_share <= 1.0)) {
    throw Error(ErrorCode::kUsage, "sequential_share must lie in [0, 1]");
  }
  if (!(p.repeat_probability >= 0.0 && p.repeat_probability < 1.0)) {
    throw Error(ErrorCode::kUsage, "repeat_probability must lie in [0, 1)");
  }
  if (!(p.span_days >= 0.0))
    throw Error(ErrorCode::kUsage, "span_days must be >= 0");
}

std::vector<Event> GenerateSessions(const SynthParams& params) {
  Validate(params);
  Rng rng(params.seed);
  const SequentialSource chains(params.num_items, params.branching, rng);
  const BundleSource bundles(params.num_items, params.bundle_size, rng);
  const double span_seconds = params.span_days * kSecondsPerDay;

  std::vector<Event> events;
  std::vector<std::size_t> items;
  std::bernoulli_distribution use_chain(params.sequential_share);
  std::bernoulli_distribution repeat(params.repeat_probability);
  for (std::size_t s = 0; s < params.num_sessions; ++s) {
    const std::size_t length =
        Uniform(rng, params.min_length, params.max_length);
    items.clear();
    const bool sequential =
        params.structure == SynthStructure::kSequential ||
        (params.structure == SynthStructure::kMixed && use_chain(rng));
    if (sequential) {
      chains.Walk(length, rng, items);
    } else {
      bundles.Draw(length, params.bundle_with_replacement, rng, items);
    }
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (params.repeat_probability > 0.0 && repeat(rng)) {
        items[i] = items[Uniform(rng, 0, i - 1)];
      }
    }
    const double start =
        span_seconds > 0.0 ? std::floor(std::uniform_real_distribution<double>(
                                 0.0, span_seconds)(rng))
                           : 0.0;
    const std::string session_id = "s" + std::to_string(s);
    for (std::size_t i = 0; i < items.size(); ++i) {
      events.push_back(Event{session_id, "i" + std::to_string(items[i]),
                             start + 60.0 * static_cast<double>(i)});
    }
  }
  return events;
}

void WriteLog(std::ostream& out, std::span<const Event> events) {
  out << "SessionId\tItemId\tTime\n";
  for (const Event& e : events) {
    out << e.session_id << '\t' << e.item_id << '\t'
        << FormatDouble(e.timestamp) << '\n';
  }
}

}  // namespace slist
