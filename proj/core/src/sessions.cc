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

#include "slist/sessions.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "slist/error.h"

namespace slist {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line,
                                          char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> ParseTimestamp(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (!std::isfinite(value) || value < 0.0) return std::nullopt;
  return value;
}

std::size_t ColumnIndex(const std::vector<std::string_view>& header,
                        const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (Trim(header[i]) == name) return i;
  }
  throw Error(ErrorCode::kSchema, "missing required column '" + name + "'");
}

// Raw grouping of events into sessions, before any indexing.
struct RawSession {
  std::string id;
  std::vector<std::string> items;
  std::vector<double> times;
};

std::vector<RawSession> GroupEvents(std::span<const Event> events) {
  std::vector<RawSession> sessions;
  std::unordered_map<std::string, std::size_t> by_id;
  for (const Event& e : events) {
    auto [it, inserted] = by_id.emplace(e.session_id, sessions.size());
    if (inserted) sessions.push_back(RawSession{e.session_id, {}, {}});
    RawSession& s = sessions[it->second];
    s.items.push_back(e.item_id);
    s.times.push_back(e.timestamp);
  }
  for (RawSession& s : sessions) {
    std::vector<std::size_t> order(s.items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(
        order.begin(), order.end(),
        [&](std::size_t a, std::size_t b) { return s.times[a] < s.times[b]; });
    RawSession sorted{s.id, {}, {}};
    sorted.items.reserve(order.size());
    sorted.times.reserve(order.size());
    for (std::size_t i : order) {
      sorted.items.push_back(std::move(s.items[i]));
      sorted.times.push_back(s.times[i]);
    }
    s = std::move(sorted);
  }
  return sessions;
}

// Drops items whose total count is below `min_support`. Returns true if
// anything was removed.
bool FilterRareItems(std::vector<RawSession>& sessions,
                     std::size_t min_support) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const RawSession& s : sessions) {
    for (const std::string& item : s.items) ++counts[item];
  }
  bool removed = false;
  for (RawSession& s : sessions) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (counts[s.items[i]] < min_support) {
        removed = true;
        continue;
      }
      if (out != i) {
        s.items[out] = std::move(s.items[i]);
        s.times[out] = s.times[i];
      }
      ++out;
    }
    s.items.resize(out);
    s.times.resize(out);
  }
  return removed;
}

bool FilterShortSessions(std::vector<RawSession>& sessions,
                         std::size_t min_length) {
  const std::size_t before = sessions.size();
  std::erase_if(sessions, [&](const RawSession& s) {
    return s.items.size() < min_length;
  });
  return sessions.size() != before;
}

double MaxSessionTime(const std::vector<Session>& sessions) {
  double t_max = 0.0;
  for (const Session& s : sessions) t_max = std::max(t_max, s.session_time);
  return t_max;
}

Session MakeSession(std::string id, std::vector<ItemIndex> items,
                    std::vector<double> times) {
  Session s;
  s.id = std::move(id);
  s.items = std::move(items);
  s.event_times = std::move(times);
  s.session_time = s.event_times.empty() ? 0.0 : s.event_times.back();
  return s;
}

// Maps raw item ids onto `vocab`, allocating unknown codes in `corpus`.
ItemIndex ResolveItem(const std::string& raw, const Vocabulary& vocab,
                      SessionCorpus& corpus,
                      std::map<std::string, ItemIndex, std::less<>>& unknown) {
  if (auto known = vocab.Find(raw)) return *known;
  auto it = unknown.find(raw);
  if (it != unknown.end()) return it->second;
  const ItemIndex code = UnknownCode(corpus.unknown_ids.size());
  corpus.unknown_ids.push_back(raw);
  unknown.emplace(raw, code);
  return code;
}

}  // namespace

ParsedLog ParseLog(std::istream& in, const LogSchema& schema) {
  if (!in) throw Error(ErrorCode::kIo, "unreadable log stream");
  ParsedLog parsed;
  std::string line;
  // Header row; an empty stream yields an empty log.
  while (std::getline(in, line)) {
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) {
    if (in.bad()) throw Error(ErrorCode::kIo, "error reading log stream");
    return parsed;
  }
  char delimiter = schema.delimiter;
  if (delimiter == '\0') {
    delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
  }
  const auto header = SplitFields(line, delimiter);
  const std::size_t session_col = ColumnIndex(header, schema.session_column);
  const std::size_t item_col = ColumnIndex(header, schema.item_column);
  const std::size_t time_col = ColumnIndex(header, schema.time_column);
  const std::size_t needed = std::max({session_col, item_col, time_col}) + 1;

  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    ++parsed.report.rows;
    const auto fields = SplitFields(line, delimiter);
    if (fields.size() < needed) {
      ++parsed.report.malformed;
      continue;
    }
    const std::string_view session = Trim(fields[session_col]);
    const std::string_view item = Trim(fields[item_col]);
    const auto time = ParseTimestamp(Trim(fields[time_col]));
    if (session.empty() || item.empty() || !time) {
      ++parsed.report.malformed;
      continue;
    }
    parsed.events.push_back(
        Event{std::string(session), std::string(item), *time});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading log stream");
  return parsed;
}

ParsedLog ParseLogFile(const std::filesystem::path& path,
                       const LogSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  return ParseLog(in, schema);
}

Vocabulary::Vocabulary(std::vector<std::string> ids) {
  for (std::string& id : ids) {
    if (index_.count(id) != 0) {
      throw Error(ErrorCode::kSchema, "duplicate item id '" + id + "'");
    }
    Add(id);
  }
}

ItemIndex Vocabulary::Add(std::string_view id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const auto index = static_cast<ItemIndex>(ids_.size());
  ids_.emplace_back(id);
  index_.emplace(std::string(id), index);
  return index;
}

std::optional<ItemIndex> Vocabulary::Find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& SessionCorpus::ItemId(ItemIndex item) const {
  if (IsKnownItem(item)) return vocab.Id(item);
  return unknown_ids.at(UnknownSlot(item));
}

SessionCorpus Preprocess(std::span<const Event> events,
                         const PreprocessOptions& options) {
  if (events.empty()) throw Error(ErrorCode::kData, "no events to preprocess");
  std::vector<RawSession> raw = GroupEvents(events);
  while (true) {
    bool changed = FilterRareItems(raw, options.min_item_support);
    changed |= FilterShortSessions(
        raw, std::max<std::size_t>(options.min_session_length, 1));
    if (!options.until_stable || !changed) break;
  }
  if (raw.empty()) {
    throw Error(ErrorCode::kData, "all events were filtered out");
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawSession& a, const RawSession& b) {
                     return a.times.back() < b.times.back();
                   });

  SessionCorpus corpus;
  corpus.sessions.reserve(raw.size());
  for (RawSession& r : raw) {
    std::vector<ItemIndex> items;
    items.reserve(r.items.size());
    for (const std::string& id : r.items) items.push_back(corpus.vocab.Add(id));
    corpus.sessions.push_back(
        MakeSession(std::move(r.id), std::move(items), std::move(r.times)));
  }
  corpus.t_max = MaxSessionTime(corpus.sessions);
  return corpus;
}

SessionCorpus Reindex(const SessionCorpus& corpus, const Vocabulary& vocab) {
  SessionCorpus out;
  out.vocab = vocab;
  std::map<std::string, ItemIndex, std::less<>> unknown;
  out.sessions.reserve(corpus.sessions.size());
  for (const Session& s : corpus.sessions) {
    Session mapped = s;
    for (ItemIndex& item : mapped.items) {
      item = ResolveItem(corpus.ItemId(item), vocab, out, unknown);
    }
    out.sessions.push_back(std::move(mapped));
  }
  out.t_max = MaxSessionTime(out.sessions);
  return out;
}

CorpusSplit SplitByDays(const SessionCorpus& corpus, int test_days,
                        int valid_days) {
  if (test_days < 0 || valid_days < 0) {
    throw Error(ErrorCode::kUsage, "split windows must be non-negative");
  }
  if (corpus.empty())
    throw Error(ErrorCode::kData, "cannot split empty corpus");

  SessionCorpus train_raw, valid_raw, test_raw;
  for (const Session& s : corpus.sessions) {
    const double day =
        std::floor((corpus.t_max - s.session_time) / kSecondsPerDay);
    if (day < test_days) {
      test_raw.sessions.push_back(s);
    } else if (day < static_cast<double>(test_days) + valid_days) {
      valid_raw.sessions.push_back(s);
    } else {
      train_raw.sessions.push_back(s);
    }
  }
  if (train_raw.empty()) {
    throw Error(ErrorCode::kData, "split leaves the training set empty");
  }
  // Source item ids are resolved through the input corpus.
  for (SessionCorpus* part : {&train_raw, &valid_raw, &test_raw}) {
    part->vocab = corpus.vocab;
    part->unknown_ids = corpus.unknown_ids;
  }

  Vocabulary train_vocab;
  for (const Session& s : train_raw.sessions) {
    for (ItemIndex item : s.items) train_vocab.Add(corpus.ItemId(item));
  }
  CorpusSplit split;
  split.train = Reindex(train_raw, train_vocab);
  split.valid = Reindex(valid_raw, train_vocab);
  split.test = Reindex(test_raw, train_vocab);
  return split;
}

SessionCorpus BuildHeldOutCorpus(std::span<const Event> events,
                                 const Vocabulary& vocab,
                                 std::size_t min_session_length) {
  std::vector<RawSession> raw = GroupEvents(events);
  FilterShortSessions(raw, std::max<std::size_t>(min_session_length, 1));
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawSession& a, const RawSession& b) {
                     return a.times.back() < b.times.back();
                   });
  SessionCorpus corpus;
  corpus.vocab = vocab;
  std::map<std::string, ItemIndex, std::less<>> unknown;
  for (RawSession& r : raw) {
    std::vector<ItemIndex> items;
    items.reserve(r.items.size());
    for (const std::string& id : r.items) {
      items.push_back(ResolveItem(id, vocab, corpus, unknown));
    }
    corpus.sessions.push_back(
        MakeSession(std::move(r.id), std::move(items), std::move(r.times)));
  }
  corpus.t_max = MaxSessionTime(corpus.sessions);
  return corpus;
}

std::vector<Event> ToEvents(const SessionCorpus& corpus) {
  std::vector<Event> events;
  for (const Session& s : corpus.sessions) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      events.push_back(
          Event{s.id, corpus.ItemId(s.items[i]), s.event_times[i]});
    }
  }
  return events;
}

}  // namespace slist
