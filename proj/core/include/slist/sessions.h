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

#ifndef SLIST_SESSIONS_H_
#define SLIST_SESSIONS_H_

// Session-log ingestion: parsing delimited click logs, support filtering,
// and time-ordered train/validation/test splits.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slist {

using ItemIndex = std::int32_t;

// Held-out splits keep items that never occur in training under negative
// codes: code -1-k refers to SessionCorpus::unknown_ids[k].
inline bool IsKnownItem(ItemIndex item) { return item >= 0; }
inline ItemIndex UnknownCode(std::size_t k) {
  return static_cast<ItemIndex>(-1 - static_cast<std::int64_t>(k));
}
inline std::size_t UnknownSlot(ItemIndex code) {
  return static_cast<std::size_t>(-1 - static_cast<std::int64_t>(code));
}

inline constexpr double kSecondsPerDay = 86400.0;

struct Event {
  std::string session_id;
  std::string item_id;
  double timestamp = 0.0;  // seconds since epoch

  bool operator==(const Event&) const = default;
};

// Column mapping for delimited logs. Column names are matched against the
// header row; delimiter '\0' picks tab when the header contains one and
// comma otherwise.
struct LogSchema {
  std::string session_column = "SessionId";
  std::string item_column = "ItemId";
  std::string time_column = "Time";
  char delimiter = '\0';
};

struct ParseReport {
  std::size_t rows = 0;       // non-empty data rows seen
  std::size_t malformed = 0;  // rows rejected
};

struct ParsedLog {
  std::vector<Event> events;
  ParseReport report;
};

// One Event per valid row, in file order. Rows with too few fields, empty
// ids, or a timestamp that is not a non-negative number are counted as
// malformed and skipped. Throws kSchema when a required column is missing.
ParsedLog ParseLog(std::istream& in, const LogSchema& schema = {});
ParsedLog ParseLogFile(const std::filesystem::path& path,
                       const LogSchema& schema = {});

// Bidirectional item id <-> dense index map.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> ids);

  // Returns the existing index when `id` is already present.
  ItemIndex Add(std::string_view id);
  std::optional<ItemIndex> Find(std::string_view id) const;
  const std::string& Id(ItemIndex index) const { return ids_.at(index); }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }

  bool operator==(const Vocabulary& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::map<std::string, ItemIndex, std::less<>> index_;
};

struct Session {
  std::string id;
  std::vector<ItemIndex> items;
  std::vector<double> event_times;  // non-decreasing, same length as items
  double session_time = 0.0;        // timestamp of the last event

  std::size_t size() const { return items.size(); }
  bool operator==(const Session&) const = default;
};

struct SessionCorpus {
  std::vector<Session> sessions;
  Vocabulary vocab;
  std::vector<std::string> unknown_ids;
  double t_max = 0.0;

  std::size_t num_items() const { return vocab.size(); }
  std::size_t num_sessions() const { return sessions.size(); }
  bool empty() const { return sessions.empty(); }
  // Raw id for a known index or an unknown code.
  const std::string& ItemId(ItemIndex item) const;

  bool operator==(const SessionCorpus&) const = default;
};

struct PreprocessOptions {
  std::size_t min_item_support = 5;
  std::size_t min_session_length = 2;
  // Repeat the item/session filters until neither removes anything. With
  // false a single item pass is followed by a single session pass.
  bool until_stable = true;
};

// Groups events by session (stable time order inside each session), drops
// rare items and short sessions, and indexes the surviving items. Sessions
// are ordered by session_time, ties by first appearance in `events`.
SessionCorpus Preprocess(std::span<const Event> events,
                         const PreprocessOptions& options = {});

struct CorpusSplit {
  SessionCorpus train;
  SessionCorpus valid;
  SessionCorpus test;
};

// Day index of a session is floor((t_max - session_time) / 86400). Indices
// below test_days go to test, the next valid_days to valid, the rest to
// train. All three splits share the vocabulary of the training split.
CorpusSplit SplitByDays(const SessionCorpus& corpus, int test_days,
                        int valid_days);

// Re-indexes `corpus` onto `vocab`; items missing from it become unknown
// codes.
SessionCorpus Reindex(const SessionCorpus& corpus, const Vocabulary& vocab);

// Groups held-out events onto a trained vocabulary without support
// filtering. Sessions with fewer than `min_session_length` events are
// dropped.
SessionCorpus BuildHeldOutCorpus(std::span<const Event> events,
                                 const Vocabulary& vocab,
                                 std::size_t min_session_length = 2);

// Flattens a corpus back into events (session order, then position order).
std::vector<Event> ToEvents(const SessionCorpus& corpus);

}  // namespace slist

#endif  // SLIST_SESSIONS_H_
