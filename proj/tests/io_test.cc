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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "oracles/oracles.h"
#include "slist/corpus_io.h"
#include "slist/error.h"
#include "slist/format.h"
#include "slist/model_io.h"
#include "slist/solver.h"

namespace slist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(10.0), "10");
  EXPECT_EQ(FormatDouble(kInf), "inf");
  EXPECT_EQ(FormatDouble(-kInf), "-inf");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = value(rng);
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
}

TEST(FormatTest, ParseAcceptsInfinitySpellingsAndRejectsJunk) {
  EXPECT_EQ(ParseDouble("inf"), kInf);
  EXPECT_EQ(ParseDouble(" +inf "), kInf);
  EXPECT_EQ(ParseDouble("infinity"), kInf);
  EXPECT_EQ(ParseDouble("-inf"), -kInf);
  EXPECT_EQ(ParseDouble("0.25"), 0.25);
  EXPECT_THROW(ParseDouble("1.5x"), Error);
  EXPECT_THROW(ParseDouble(""), Error);
}

SessionCorpus SampleCorpus() {
  SessionCorpus corpus =
      oracle::MakeCorpus({{0, 1, 0}, {2, 1}}, 3, {0.5, 1.25});
  corpus.sessions[1].items.push_back(UnknownCode(0));
  corpus.sessions[1].event_times.push_back(corpus.sessions[1].session_time +
                                           0.125);
  corpus.sessions[1].session_time = corpus.sessions[1].event_times.back();
  corpus.t_max = corpus.sessions[1].session_time;
  corpus.unknown_ids = {"ghost"};
  return corpus;
}

TEST(CorpusIoTest, RoundTrip) {
  const SessionCorpus corpus = SampleCorpus();
  std::stringstream buffer;
  WriteCorpus(buffer, corpus);
  const std::string first = buffer.str();
  const SessionCorpus back = ReadCorpus(buffer);
  EXPECT_EQ(back, corpus);
  std::ostringstream again;
  WriteCorpus(again, back);
  EXPECT_EQ(again.str(), first);
}

TEST(CorpusIoTest, RejectsBadHeaderAndDetectsFormat) {
  std::istringstream bad("not-a-corpus\n");
  try {
    ReadCorpus(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
  const auto dir = std::filesystem::temp_directory_path() / "slist_io_test";
  std::filesystem::create_directories(dir);
  WriteCorpusFile(dir / "c.corpus", SampleCorpus());
  EXPECT_TRUE(IsCorpusFile(dir / "c.corpus"));
  EXPECT_EQ(ReadCorpusFile(dir / "c.corpus"), SampleCorpus());
  {
    std::ofstream log(dir / "log.tsv");
    log << "SessionId\tItemId\tTime\n";
  }
  EXPECT_FALSE(IsCorpusFile(dir / "log.tsv"));
  std::filesystem::remove_all(dir);
}

ItemModel SampleModel(ModelKind kind) {
  std::mt19937_64 rng(9);
  const DesignMatrices dm = oracle::RandomDesign(rng, 7, 15, 1.0);
  HyperParams hyper;
  hyper.lambda = 3.5;
  hyper.alpha = 0.4;
  hyper.xi = kind == ModelKind::kSlis ? 0.3 : kInf;
  hyper.decay.time_days = 16;
  hyper.decay.position = 0.25;
  hyper.decay.inference = 4;
  hyper.decay.decay_future = false;
  return Solve(kind, dm, hyper);
}

TEST(ModelIoTest, BitExactRoundTrip) {
  for (ModelKind kind : {ModelKind::kSlis, ModelKind::kSlit, ModelKind::kSlist,
                         ModelKind::kEase}) {
    const ItemModel model = SampleModel(kind);
    std::stringstream buffer;
    WriteModel(buffer, model);
    const std::string bytes = buffer.str();
    const ItemModel back = ReadModel(buffer);
    EXPECT_EQ(back.kind, model.kind);
    EXPECT_EQ(back.hyper, model.hyper);
    EXPECT_EQ(back.vocab, model.vocab);
    ASSERT_EQ(back.weights.rows(), model.weights.rows());
    EXPECT_EQ(std::memcmp(back.weights.data(), model.weights.data(),
                          sizeof(double) * model.weights.size()),
              0);
    std::ostringstream again;
    WriteModel(again, back);
    EXPECT_EQ(again.str(), bytes);
  }
}

TEST(ModelIoTest, TruncatedPayloadIsRejected) {
  std::stringstream buffer;
  WriteModel(buffer, SampleModel(ModelKind::kSlist));
  std::string bytes = buffer.str();
  bytes.resize(bytes.size() - 8);
  std::istringstream in(bytes);
  EXPECT_THROW(ReadModel(in), Error);
  std::istringstream wrong("slist-model 2\n");
  EXPECT_THROW(ReadModel(wrong), Error);
}

}  // namespace
}  // namespace slist
