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

#include "slist/corpus_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

constexpr std::string_view kMagic = "slist-corpus 1";

std::string ReadLine(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kSchema,
                std::string("truncated corpus file, expected ") + what);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::size_t ReadCount(std::istream& in, std::string_view key) {
  const std::string line = ReadLine(in, key.data());
  if (line.rfind(key, 0) != 0 || line.size() <= key.size() + 1) {
    throw Error(ErrorCode::kSchema, "expected '" + std::string(key) +
                                        " <count>', got '" + line + "'");
  }
  std::size_t count = 0;
  const char* begin = line.data() + key.size() + 1;
  const char* end = line.data() + line.size();
  const auto [ptr, ec] = std::from_chars(begin, end, count);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kSchema, "bad count in '" + line + "'");
  }
  return count;
}

Session ParseSessionRecord(const std::string& line,
                           const SessionCorpus& corpus) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string::npos || tab == 0) {
    throw Error(ErrorCode::kSchema, "bad session record '" + line + "'");
  }
  Session s;
  s.id = line.substr(0, tab);
  std::string_view rest(line);
  rest.remove_prefix(tab + 1);
  while (!rest.empty()) {
    const std::size_t space = rest.find(' ');
    const std::string_view token = rest.substr(0, space);
    rest = space == std::string_view::npos ? std::string_view()
                                           : rest.substr(space + 1);
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kSchema, "bad event token in '" + line + "'");
    }
    ItemIndex item = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + colon, item);
    if (ec != std::errc() || ptr != token.data() + colon) {
      throw Error(ErrorCode::kSchema, "bad item index in '" + line + "'");
    }
    const bool valid =
        IsKnownItem(item) ? static_cast<std::size_t>(item) < corpus.vocab.size()
                          : UnknownSlot(item) < corpus.unknown_ids.size();
    if (!valid) {
      throw Error(ErrorCode::kSchema,
                  "item index out of range in '" + line + "'");
    }
    s.items.push_back(item);
    s.event_times.push_back(ParseDouble(token.substr(colon + 1)));
  }
  if (s.items.empty()) {
    throw Error(ErrorCode::kSchema, "empty session record '" + line + "'");
  }
  s.session_time = s.event_times.back();
  return s;
}

}  // namespace

void WriteCorpus(std::ostream& out, const SessionCorpus& corpus) {
  out << kMagic << '\n';
  out << "items " << corpus.vocab.size() << '\n';
  for (const std::string& id : corpus.vocab.ids()) out << id << '\n';
  out << "unknown " << corpus.unknown_ids.size() << '\n';
  for (const std::string& id : corpus.unknown_ids) out << id << '\n';
  out << "sessions " << corpus.sessions.size() << '\n';
  for (const Session& s : corpus.sessions) {
    out << s.id << '\t';
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (i > 0) out << ' ';
      out << s.items[i] << ':' << FormatDouble(s.event_times[i]);
    }
    out << '\n';
  }
}

SessionCorpus ReadCorpus(std::istream& in) {
  if (!in) throw Error(ErrorCode::kIo, "unreadable corpus stream");
  if (ReadLine(in, "header") != kMagic) {
    throw Error(ErrorCode::kSchema, "not a corpus file (bad header)");
  }
  SessionCorpus corpus;
  const std::size_t n = ReadCount(in, "items");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(ReadLine(in, "item id"));
  corpus.vocab = Vocabulary(std::move(ids));
  const std::size_t k = ReadCount(in, "unknown");
  for (std::size_t i = 0; i < k; ++i) {
    corpus.unknown_ids.push_back(ReadLine(in, "unknown item id"));
  }
  const std::size_t m = ReadCount(in, "sessions");
  corpus.sessions.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Session s = ParseSessionRecord(ReadLine(in, "session record"), corpus);
    corpus.t_max = std::max(corpus.t_max, s.session_time);
    corpus.sessions.push_back(std::move(s));
  }
  return corpus;
}

void WriteCorpusFile(const std::filesystem::path& path,
                     const SessionCorpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  WriteCorpus(out, corpus);
  if (!out)
    throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

SessionCorpus ReadCorpusFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return ReadCorpus(in);
}

bool IsCorpusFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line == kMagic;
}

}  // namespace slist
