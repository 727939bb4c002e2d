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

#ifndef SLIST_SYNTHETIC_H_
#define SLIST_SYNTHETIC_H_

// Seeded generators of desk-scale session logs with controllable structure.
//
//  kSequential   every item has `branching` fixed successors; a session is
//                a random walk along them, so order carries the signal.
//  kCooccurrence items are partitioned into bundles of `bundle_size`; a
//                session picks one bundle and clicks its items in random
//                order, so only set membership carries the signal.
//  kMixed        each session comes from the sequential generator with
//                probability `sequential_share`, otherwise from bundles.
//
// Any event may instead repeat an earlier item of the same session with
// probability `repeat_probability`.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "slist/sessions.h"

namespace slist {

enum class SynthStructure { kSequential, kCooccurrence, kMixed };

std::string_view SynthStructureName(SynthStructure structure);
std::optional<SynthStructure> ParseSynthStructure(std::string_view name);

struct SynthParams {
  std::size_t num_sessions = 1000;
  std::size_t num_items = 200;
  std::size_t min_length = 2;
  std::size_t max_length = 8;
  SynthStructure structure = SynthStructure::kMixed;
  double sequential_share = 0.5;
  std::size_t branching = 12;
  std::size_t bundle_size = 30;
  // Bundle sessions draw every event independently (with replacement), so
  // item order and repeats carry no structure.
  bool bundle_with_replacement = false;
  double repeat_probability = 0.0;
  double span_days = 30.0;  // session start times are spread over this window
  std::uint64_t seed = 42;
};

// Throws kUsage for inconsistent sizes (no items, min > max length,
// branching >= items, ...).
void Validate(const SynthParams& params);

// Events are emitted session by session, in time order. Item ids are
// "i<k>", session ids "s<k>", timestamps whole seconds.
std::vector<Event> GenerateSessions(const SynthParams& params);

// Tab-separated log with a "SessionId\tItemId\tTime" header.
void WriteLog(std::ostream& out, std::span<const Event> events);

}  // namespace slist

#endif  // SLIST_SYNTHETIC_H_
