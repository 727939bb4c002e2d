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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slist/corpus_io.h"
#include "slist/error.h"

namespace slist {
namespace {

std::vector<Event> Repeat(const std::string& session, const std::string& item,
                          double t, int count) {
  std::vector<Event> out;
  for (int i = 0; i < count; ++i) out.push_back({session, item, t + i});
  return out;
}

void Append(std::vector<Event>& to, const std::vector<Event>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

std::vector<std::string> SessionItems(const SessionCorpus& c, std::size_t s) {
  std::vector<std::string> ids;
  for (ItemIndex i : c.sessions[s].items) ids.push_back(c.ItemId(i));
  return ids;
}

TEST(ParseLogTest, MapsCommaRowToEvent) {
  std::istringstream in("SessionId,ItemId,Time\ns1,i7,1000\n");
  const ParsedLog log = ParseLog(in);
  ASSERT_EQ(log.events.size(), 1u);
  EXPECT_EQ(log.events[0], (Event{"s1", "i7", 1000.0}));
  EXPECT_EQ(log.report.rows, 1u);
  EXPECT_EQ(log.report.malformed, 0u);
}

TEST(ParseLogTest, EmptyStreamYieldsNothing) {
  std::istringstream in("");
  const ParsedLog log = ParseLog(in);
  EXPECT_TRUE(log.events.empty());
  EXPECT_EQ(log.report.rows, 0u);
}

TEST(ParseLogTest, CountsOneMalformedRowAmongTen) {
  std::string text = "SessionId\tItemId\tTime\n";
  for (int i = 0; i < 10; ++i) {
    if (i == 4) {
      text += "s4\ti4\tnot-a-time\n";
    } else {
      text += "s" + std::to_string(i) + "\ti" + std::to_string(i) + "\t" +
              std::to_string(100 + i) + "\n";
    }
  }
  std::istringstream in(text);
  const ParsedLog log = ParseLog(in);
  EXPECT_EQ(log.events.size(), 9u);
  EXPECT_EQ(log.report.rows, 10u);
  EXPECT_EQ(log.report.malformed, 1u);
}

TEST(ParseLogTest, HonoursColumnMappingAndOrder) {
  std::istringstream in("ts;item;extra;sess\n12.5;x;q;A\n13;y;q\n");
  LogSchema schema;
  schema.session_column = "sess";
  schema.item_column = "item";
  schema.time_column = "ts";
  schema.delimiter = ';';
  const ParsedLog log = ParseLog(in, schema);
  ASSERT_EQ(log.events.size(), 1u);
  EXPECT_EQ(log.events[0], (Event{"A", "x", 12.5}));
  EXPECT_EQ(log.report.malformed, 1u);
}

TEST(ParseLogTest, MissingColumnIsSchemaError) {
  std::istringstream in("SessionId,Item,Time\ns1,i1,1\n");
  try {
    ParseLog(in);
    FAIL() << "expected schema error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
}

TEST(ParseLogTest, MissingFileIsIoError) {
  try {
    ParseLogFile("/nonexistent/definitely/missing.csv");
    FAIL() << "expected io error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(PreprocessTest, RareItemRemovedAndShortSessionsDropped) {
  std::vector<Event> events;
  // "x" appears 4 times in total, "a" and "b" 6 times each.
  Append(events, {{"s1", "a", 1}, {"s1", "x", 2}});
  Append(events,
         {{"s2", "x", 3}, {"s2", "x", 4}, {"s2", "b", 5}, {"s2", "a", 6}});
  Append(events, {{"s3", "x", 7}, {"s3", "b", 8}});
  Append(events, Repeat("s4", "a", 10, 4));
  Append(events, Repeat("s5", "b", 20, 4));
  const SessionCorpus corpus = Preprocess(events);
  EXPECT_FALSE(corpus.vocab.Find("x").has_value());
  for (const Session& s : corpus.sessions) EXPECT_GE(s.size(), 2u);
  std::set<std::string> ids;
  for (const Session& s : corpus.sessions) ids.insert(s.id);
  EXPECT_EQ(ids, (std::set<std::string>{"s2", "s4", "s5"}));
}

TEST(PreprocessTest, SingleEventSessionDropped) {
  std::vector<Event> events = Repeat("long", "a", 0, 5);
  events.push_back({"lonely", "a", 100});
  PreprocessOptions options;
  options.min_item_support = 1;
  const SessionCorpus corpus = Preprocess(events, options);
  ASSERT_EQ(corpus.num_sessions(), 1u);
  EXPECT_EQ(corpus.sessions[0].id, "long");
}

TEST(PreprocessTest, CountsItemsAndSessions) {
  std::vector<Event> events;
  for (int k = 0; k < 5; ++k) {
    events.push_back({"s1", "a", 10.0 * k});
    events.push_back({"s1", "b", 10.0 * k + 1});
    events.push_back({"s2", "c", 10.0 * k + 2});
  }
  const SessionCorpus corpus = Preprocess(events);
  EXPECT_EQ(corpus.num_items(), 3u);
  EXPECT_EQ(corpus.num_sessions(), 2u);
  EXPECT_DOUBLE_EQ(corpus.t_max, 42.0);
}

TEST(PreprocessTest, AllFilteredIsDataError) {
  const std::vector<Event> events{{"s1", "a", 1}, {"s1", "b", 2}};
  try {
    Preprocess(events);
    FAIL() << "expected data error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
  }
  EXPECT_THROW(Preprocess(std::vector<Event>{}), Error);
}

TEST(PreprocessTest, StableSortWithinSession) {
  const std::vector<Event> events{
      {"s", "c", 5}, {"s", "a", 1}, {"s", "b", 5}, {"s", "d", 3}};
  PreprocessOptions options;
  options.min_item_support = 1;
  const SessionCorpus corpus = Preprocess(events, options);
  EXPECT_EQ(SessionItems(corpus, 0),
            (std::vector<std::string>{"a", "d", "c", "b"}));
  EXPECT_EQ(corpus.sessions[0].event_times, (std::vector<double>{1, 3, 5, 5}));
  EXPECT_DOUBLE_EQ(corpus.sessions[0].session_time, 5.0);
}

TEST(PreprocessTest, SinglePassModeCanLeaveCascadingRareItems) {
  // Dropping the short session removes one "b", pushing it under support 2.
  const std::vector<Event> events{
      {"s1", "b", 1}, {"s1", "z", 2}, {"s2", "b", 3}, {"s2", "a", 4},
      {"s3", "a", 5}, {"s3", "c", 6}, {"s4", "c", 7}, {"s4", "a", 8}};
  PreprocessOptions single;
  single.min_item_support = 2;
  single.until_stable = false;
  const SessionCorpus once = Preprocess(events, single);
  PreprocessOptions stable = single;
  stable.until_stable = true;
  const SessionCorpus fixed = Preprocess(events, stable);
  EXPECT_EQ(once.num_sessions(), 3u);  // s2 still holds a lone "b"
  EXPECT_EQ(fixed.num_sessions(), 2u);
  EXPECT_FALSE(fixed.vocab.Find("b").has_value());
}

class PreprocessPropertyTest : public ::testing::TestWithParam<int> {};

std::vector<Event> RandomEvents(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sessions(5, 60);
  std::uniform_int_distribution<int> length(1, 7);
  std::uniform_int_distribution<int> item(0, 25);
  std::uniform_int_distribution<int> clock(0, 50);
  std::vector<Event> events;
  const int m = sessions(rng);
  for (int s = 0; s < m; ++s) {
    const int len = length(rng);
    for (int k = 0; k < len; ++k) {
      events.push_back({"s" + std::to_string(s),
                        "i" + std::to_string(item(rng)),
                        static_cast<double>(clock(rng) * 60)});
    }
  }
  std::shuffle(events.begin(), events.end(), rng);
  return events;
}

TEST_P(PreprocessPropertyTest, SupportLengthOrderingAndIdempotence) {
  std::mt19937_64 rng(GetParam());
  const std::vector<Event> events = RandomEvents(rng);
  PreprocessOptions options;
  options.min_item_support = 3;
  SessionCorpus corpus;
  try {
    corpus = Preprocess(events, options);
  } catch (const Error& e) {
    ASSERT_EQ(e.code(), ErrorCode::kData);
    return;
  }
  std::map<ItemIndex, std::size_t> counts;
  double t_max = 0.0;
  for (const Session& s : corpus.sessions) {
    EXPECT_GE(s.size(), options.min_session_length);
    EXPECT_TRUE(std::is_sorted(s.event_times.begin(), s.event_times.end()));
    for (ItemIndex i : s.items) {
      ASSERT_GE(i, 0);
      ASSERT_LT(static_cast<std::size_t>(i), corpus.num_items());
      ++counts[i];
    }
    t_max = std::max(t_max, s.session_time);
  }
  EXPECT_EQ(counts.size(), corpus.num_items());
  for (const auto& [item, count] : counts) {
    EXPECT_GE(count, options.min_item_support);
  }
  EXPECT_EQ(corpus.t_max, t_max);

  // Re-serializing through the container and the event form changes nothing.
  std::stringstream buffer;
  WriteCorpus(buffer, corpus);
  const SessionCorpus reread = ReadCorpus(buffer);
  const std::vector<Event> again = ToEvents(reread);
  EXPECT_EQ(Preprocess(again, options), corpus);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PreprocessPropertyTest,
                         ::testing::Range(1, 31));

SessionCorpus DayCorpus() {
  // One two-item session ending on each of days 1..5.
  std::vector<Event> events;
  for (int day = 1; day <= 5; ++day) {
    const double t = day * kSecondsPerDay + 3600;
    const std::string sid = "d" + std::to_string(day);
    events.push_back({sid, "a", t});
    events.push_back({sid, day == 5 ? "late" : "b", t + 10});
  }
  PreprocessOptions options;
  options.min_item_support = 1;
  return Preprocess(events, options);
}

TEST(SplitByDaysTest, ZeroWindowsKeepEverythingInTrain) {
  const SessionCorpus corpus = DayCorpus();
  const CorpusSplit split = SplitByDays(corpus, 0, 0);
  EXPECT_EQ(split.train.num_sessions(), corpus.num_sessions());
  EXPECT_TRUE(split.valid.empty());
  EXPECT_TRUE(split.test.empty());
  EXPECT_EQ(split.train.t_max, corpus.t_max);
}

TEST(SplitByDaysTest, DayBoundaries) {
  const CorpusSplit split = SplitByDays(DayCorpus(), 1, 1);
  ASSERT_EQ(split.test.num_sessions(), 1u);
  ASSERT_EQ(split.valid.num_sessions(), 1u);
  ASSERT_EQ(split.train.num_sessions(), 3u);
  EXPECT_EQ(split.test.sessions[0].id, "d5");
  EXPECT_EQ(split.valid.sessions[0].id, "d4");
  EXPECT_EQ(split.train.sessions[0].id, "d1");
  EXPECT_EQ(split.train.sessions[2].id, "d3");
  EXPECT_DOUBLE_EQ(split.train.t_max, 3 * kSecondsPerDay + 3610);
}

TEST(SplitByDaysTest, TestOnlyItemBecomesUnknown) {
  const CorpusSplit split = SplitByDays(DayCorpus(), 1, 0);
  EXPECT_FALSE(split.train.vocab.Find("late").has_value());
  EXPECT_EQ(split.test.vocab, split.train.vocab);
  const Session& s = split.test.sessions[0];
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(IsKnownItem(s.items[0]));
  EXPECT_FALSE(IsKnownItem(s.items[1]));
  EXPECT_EQ(split.test.ItemId(s.items[1]), "late");
}

TEST(SplitByDaysTest, EmptyTrainIsDataErrorAndNegativeWindowIsUsage) {
  const SessionCorpus corpus = DayCorpus();
  try {
    SplitByDays(corpus, 10, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
  }
  try {
    SplitByDays(corpus, -1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUsage);
  }
}

TEST_P(PreprocessPropertyTest, SplitPartitionsTheCorpus) {
  std::mt19937_64 rng(1000 + GetParam());
  std::vector<Event> events;
  std::uniform_int_distribution<int> item(0, 9);
  std::uniform_real_distribution<double> when(0, 12 * kSecondsPerDay);
  for (int s = 0; s < 40; ++s) {
    const double t = when(rng);
    for (int k = 0; k < 3; ++k) {
      events.push_back(
          {"s" + std::to_string(s), "i" + std::to_string(item(rng)), t + k});
    }
  }
  PreprocessOptions options;
  options.min_item_support = 1;
  const SessionCorpus corpus = Preprocess(events, options);
  CorpusSplit split;
  try {
    split = SplitByDays(corpus, 2, 3);
  } catch (const Error&) {
    return;  // random draw put everything in the held-out windows
  }
  std::multiset<std::string> seen;
  for (const SessionCorpus* part : {&split.train, &split.valid, &split.test}) {
    EXPECT_EQ(part->vocab, split.train.vocab);
    for (const Session& s : part->sessions) {
      seen.insert(s.id);
      const auto& original =
          *std::find_if(corpus.sessions.begin(), corpus.sessions.end(),
                        [&](const Session& o) { return o.id == s.id; });
      ASSERT_EQ(original.size(), s.size());
      for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_EQ(part->ItemId(s.items[k]), corpus.ItemId(original.items[k]));
      }
    }
  }
  std::multiset<std::string> expected;
  for (const Session& s : corpus.sessions) expected.insert(s.id);
  EXPECT_EQ(seen, expected);
}

TEST(VocabularyTest, BijectionAndDuplicates) {
  Vocabulary v;
  EXPECT_EQ(v.Add("x"), 0);
  EXPECT_EQ(v.Add("y"), 1);
  EXPECT_EQ(v.Add("x"), 0);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.Id(1), "y");
  EXPECT_EQ(*v.Find("y"), 1);
  EXPECT_FALSE(v.Find("z"));
  EXPECT_THROW(Vocabulary({"a", "b", "a"}), Error);
}

TEST(BuildHeldOutCorpusTest, MapsUnknownsToDistinctCodes) {
  const Vocabulary vocab({"a", "b"});
  const std::vector<Event> events{{"t", "a", 1},
                                  {"t", "q", 2},
                                  {"t", "r", 3},
                                  {"t", "q", 4},
                                  {"u", "b", 9}};
  const SessionCorpus held = BuildHeldOutCorpus(events, vocab);
  ASSERT_EQ(held.num_sessions(), 1u);
  const auto& items = held.sessions[0].items;
  EXPECT_EQ(items[0], 0);
  EXPECT_EQ(items[1], UnknownCode(0));
  EXPECT_EQ(items[2], UnknownCode(1));
  EXPECT_EQ(items[3], UnknownCode(0));
  EXPECT_EQ(held.unknown_ids, (std::vector<std::string>{"q", "r"}));
}

}  // namespace
}  // namespace slist
