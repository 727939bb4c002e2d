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

#ifndef SLIST_CORPUS_IO_H_
#define SLIST_CORPUS_IO_H_

// Text container for preprocessed corpora, used as a cache between CLI
// stages. Layout:
//
//   slist-corpus 1
//   items <n>
//   <item id>            (n lines, index order)
//   unknown <k>
//   <item id>            (k lines, code -1-k order)
//   sessions <m>
//   <session id>\t<item>:<time> <item>:<time> ...
//
// Timestamps are written in shortest round-trip form.

#include <filesystem>
#include <iosfwd>

#include "slist/sessions.h"

namespace slist {

void WriteCorpus(std::ostream& out, const SessionCorpus& corpus);
SessionCorpus ReadCorpus(std::istream& in);

void WriteCorpusFile(const std::filesystem::path& path,
                     const SessionCorpus& corpus);
SessionCorpus ReadCorpusFile(const std::filesystem::path& path);

// True when the file starts with the corpus magic line.
bool IsCorpusFile(const std::filesystem::path& path);

}  // namespace slist

#endif  // SLIST_CORPUS_IO_H_
