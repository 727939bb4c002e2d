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

#include "slist_tools/commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

#include "slist/corpus_io.h"
#include "slist/error.h"
#include "slist/format.h"
#include "slist/model_io.h"
#include "slist/recommender.h"
#include "slist/representation.h"
#include "slist/synthetic.h"

namespace slist::tools {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::string& Require(const std::string& value, const char* what) {
  if (value.empty()) {
    throw Error(ErrorCode::kUsage, std::string("missing ") + what);
  }
  return value;
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out = OpenOutput(path);
  out << text;
  if (!out)
    throw Error(ErrorCode::kIo, "error writing '" + path.string() + "'");
}

// A corpus container is used as is; a raw log is preprocessed.
SessionCorpus LoadTraining(const std::string& path, const RunConfig& config) {
  if (IsCorpusFile(path)) return ReadCorpusFile(path);
  const ParsedLog log = ParseLogFile(path, config.data.schema);
  return Preprocess(log.events, config.preprocess);
}

SessionCorpus LoadHeldOut(const std::string& path, const Vocabulary& vocab,
                          const RunConfig& config) {
  if (IsCorpusFile(path)) {
    SessionCorpus corpus = ReadCorpusFile(path);
    if (!(corpus.vocab == vocab)) {
      throw Error(
          ErrorCode::kData,
          "vocabulary of '" + path + "' does not match the model vocabulary");
    }
    return corpus;
  }
  const ParsedLog log = ParseLogFile(path, config.data.schema);
  return BuildHeldOutCorpus(log.events, vocab,
                            config.preprocess.min_session_length);
}

void WriteReport(const EvalReport& report, const std::string& prefix) {
  WriteText(prefix + ".txt", FormatReportTable(report));
  WriteText(prefix + ".kv", FormatReportKeyValue(report));
}

// Grid axes in nesting order; the innermost axes share a trained model or
// design matrices with their neighbours.
std::vector<HyperParams> ExpandGrid(const RunConfig& config) {
  const GridConfig& g = config.grid;
  if (g.lambda.empty() && g.xi.empty() && g.alpha.empty() &&
      g.delta_pos.empty() && g.delta_inf.empty() && g.delta_time.empty()) {
    throw Error(ErrorCode::kUsage, "empty grid: give at least one value list");
  }
  auto axis = [](const std::vector<double>& values, double base) {
    return values.empty() ? std::vector<double>{base} : values;
  };
  const HyperParams& base = config.hyper;
  std::vector<HyperParams> points;
  for (double time : axis(g.delta_time, base.decay.time_days)) {
    for (double pos : axis(g.delta_pos, base.decay.position)) {
      for (double lambda : axis(g.lambda, base.lambda)) {
        for (double alpha : axis(g.alpha, base.alpha)) {
          for (double xi : axis(g.xi, base.xi)) {
            for (double inf : axis(g.delta_inf, base.decay.inference)) {
              HyperParams h = base;
              h.decay.time_days = time;
              h.decay.position = pos;
              h.decay.inference = inf;
              h.lambda = lambda;
              h.alpha = alpha;
              h.xi = xi;
              Validate(h);
              points.push_back(h);
            }
          }
        }
      }
    }
  }
  return points;
}

bool SameTraining(const HyperParams& a, const HyperParams& b) {
  return a.lambda == b.lambda && a.xi == b.xi && a.alpha == b.alpha &&
         a.decay.time_days == b.decay.time_days &&
         a.decay.position == b.decay.position &&
         a.decay.decay_future == b.decay.decay_future;
}

}  // namespace

PreprocessSummary RunPreprocess(const RunConfig& config, std::ostream& out) {
  const ParsedLog log =
      ParseLogFile(Require(config.data.log, "--log"), config.data.schema);
  const SessionCorpus corpus = Preprocess(log.events, config.preprocess);
  const CorpusSplit split =
      SplitByDays(corpus, config.split.test_days, config.split.valid_days);
  const fs::path dir = config.output.dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteCorpusFile(dir / "train.corpus", split.train);
  WriteCorpusFile(dir / "valid.corpus", split.valid);
  WriteCorpusFile(dir / "test.corpus", split.test);

  PreprocessSummary s;
  s.rows = log.report.rows;
  s.malformed = log.report.malformed;
  s.train_sessions = split.train.num_sessions();
  s.valid_sessions = split.valid.num_sessions();
  s.test_sessions = split.test.num_sessions();
  s.items = split.train.num_items();
  out << "rows=" << s.rows << "\nmalformed=" << s.malformed
      << "\nitems=" << s.items << "\ntrain_sessions=" << s.train_sessions
      << "\nvalid_sessions=" << s.valid_sessions
      << "\ntest_sessions=" << s.test_sessions << '\n';
  return s;
}

TrainSummary RunTrain(const RunConfig& config, std::ostream& out) {
  const auto start = Clock::now();
  Validate(config.hyper);
  const SessionCorpus corpus =
      LoadTraining(Require(config.data.train, "--train"), config);

  TrainSummary s;
  const auto assembly = Clock::now();
  const DesignMatrices dm = Assemble(corpus, config.hyper.decay);
  s.assembly_seconds = SecondsSince(assembly);
  const ItemModel model = Solve(config.kind, dm, config.hyper, &s.solve);
  WriteModelFile(config.model_path, model);
  s.items = dm.num_items();
  s.sessions = dm.num_sessions();
  s.partial = dm.num_partial();
  s.total_seconds = SecondsSince(start);

  out << "kind=" << ModelKindName(config.kind) << "\nitems=" << s.items
      << "\nsessions=" << s.sessions << "\npartial_sessions=" << s.partial
      << "\npeak_dimension=" << s.solve.peak_dimension
      << "\nregularized=" << (s.solve.regularized ? "true" : "false")
      << "\ntime.assembly=" << FormatDouble(s.assembly_seconds)
      << "\ntime.gram=" << FormatDouble(s.solve.gram_seconds)
      << "\ntime.inversion=" << FormatDouble(s.solve.inversion_seconds)
      << "\ntime.product=" << FormatDouble(s.solve.product_seconds)
      << "\ntime.total=" << FormatDouble(s.total_seconds) << '\n';
  return s;
}

EvalReport RunEval(const RunConfig& config, std::ostream& out) {
  const ItemModel model = ReadModelFile(config.model_path);
  const SessionCorpus test =
      LoadHeldOut(Require(config.data.test, "--test"), model.vocab, config);
  const EvalReport report = EvaluateCorpus(model, test, config.eval);
  WriteReport(report, config.output.report);
  out << FormatReportTable(report);
  return report;
}

RecommendSummary RunRecommend(const RunConfig& config, std::ostream& out) {
  if (config.top_n == 0) throw Error(ErrorCode::kUsage, "--top-n must be >= 1");
  const ItemModel model = ReadModelFile(config.model_path);
  const ParsedLog log = ParseLogFile(
      Require(config.data.sessions, "--sessions"), config.data.schema);
  const SessionCorpus sessions = BuildHeldOutCorpus(log.events, model.vocab, 1);

  RecommendSummary s;
  std::ofstream table = OpenOutput(config.output.recommendations);
  table << "SessionId\tRank\tItemId\tScore\n";
  for (const Session& session : sessions.sessions) {
    ++s.sessions;
    const SessionState state = SessionState::FromItems(session.items);
    if (state.items.empty()) {
      ++s.cold;
      continue;
    }
    const Ranking ranking = Recommend(model, state, config.top_n);
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      table << session.id << '\t' << r + 1 << '\t'
            << model.vocab.Id(ranking[r].item) << '\t'
            << FormatDouble(ranking[r].score) << '\n';
      ++s.rows;
    }
  }
  if (!table) throw Error(ErrorCode::kIo, "error writing recommendations");
  out << "sessions=" << s.sessions << "\ncold=" << s.cold << "\nrows=" << s.rows
      << '\n';
  return s;
}

std::vector<GridPoint> RunGrid(const RunConfig& config, std::ostream& out) {
  const std::vector<HyperParams> points = ExpandGrid(config);
  const SessionCorpus train =
      LoadTraining(Require(config.data.train, "--train"), config);
  const SessionCorpus valid =
      LoadHeldOut(Require(config.data.valid, "--valid"), train.vocab, config);
  if (valid.empty()) throw Error(ErrorCode::kData, "validation split is empty");

  EvalConfig eval = config.eval;
  if (std::find(eval.metrics.begin(), eval.metrics.end(), config.grid.metric) ==
      eval.metrics.end()) {
    eval.metrics.push_back(config.grid.metric);
  }
  if (std::find(eval.cutoffs.begin(), eval.cutoffs.end(), config.grid.cutoff) ==
      eval.cutoffs.end()) {
    eval.cutoffs.push_back(config.grid.cutoff);
  }

  // Consecutive points differing only in delta_inf share one trained model.
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (groups.empty() ||
        !SameTraining(points[groups.back().first], points[i])) {
      groups.emplace_back(i, i + 1);
    } else {
      groups.back().second = i + 1;
    }
  }
  std::map<std::pair<double, double>, DesignMatrices> designs;
  for (const HyperParams& h : points) {
    const auto key = std::make_pair(h.decay.time_days, h.decay.position);
    if (designs.count(key) == 0) designs.emplace(key, Assemble(train, h.decay));
  }

  std::vector<GridPoint> results(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t g = next.fetch_add(1);
      if (g >= groups.size()) return;
      try {
        const auto [begin, end] = groups[g];
        const HyperParams& first = points[begin];
        ItemModel model = Solve(
            config.kind,
            designs.at({first.decay.time_days, first.decay.position}), first);
        for (std::size_t i = begin; i < end; ++i) {
          model.hyper = points[i];
          results[i].hyper = points[i];
          results[i].report = EvaluateCorpus(model, valid, eval);
          results[i].score =
              results[i].report.Get(config.grid.metric, config.grid.cutoff);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = groups.size();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(config.grid.jobs, 1)), 1,
      groups.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(
      results.begin(), results.end(),
      [](const GridPoint& a, const GridPoint& b) { return a.score > b.score; });

  const std::string metric =
      FormatMetricAt(config.grid.metric, config.grid.cutoff);
  std::ofstream table = OpenOutput(config.output.results);
  table << "rank\tkind\tlambda\txi\talpha\tdelta_pos\tdelta_inf\tdelta_time\t"
        << metric << '\n';
  for (std::size_t r = 0; r < results.size(); ++r) {
    const HyperParams& h = results[r].hyper;
    table << r + 1 << '\t' << ModelKindName(config.kind) << '\t'
          << FormatDouble(h.lambda) << '\t' << FormatDouble(h.xi) << '\t'
          << FormatDouble(h.alpha) << '\t' << FormatDouble(h.decay.position)
          << '\t' << FormatDouble(h.decay.inference) << '\t'
          << FormatDouble(h.decay.time_days) << '\t'
          << FormatDouble(results[r].score) << '\n';
  }
  if (!table) throw Error(ErrorCode::kIo, "error writing grid results");
  WriteText(config.output.preset,
            EmitPreset(config.kind, results.front().hyper));

  out << "points=" << results.size() << "\ntrained=" << groups.size()
      << "\nbest." << metric << '=' << FormatDouble(results.front().score)
      << "\nbest_preset=" << config.output.preset << '\n';
  return results;
}

std::size_t RunSynth(const RunConfig& config, std::ostream& out) {
  const std::vector<Event> events = GenerateSessions(config.synth);
  std::ofstream file = OpenOutput(config.output.log);
  WriteLog(file, events);
  if (!file) throw Error(ErrorCode::kIo, "error writing synthetic log");
  out << "sessions=" << config.synth.num_sessions
      << "\nevents=" << events.size() << "\nlog=" << config.output.log << '\n';
  return events.size();
}

}  // namespace slist::tools
