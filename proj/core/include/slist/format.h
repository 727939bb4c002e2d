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

#ifndef SLIST_FORMAT_H_
#define SLIST_FORMAT_H_

// Exact text round-tripping of doubles for the text containers and reports.

#include <string>
#include <string_view>

namespace slist {

// Shortest representation that parses back to the same double ("inf" for
// +infinity).
std::string FormatDouble(double value);

// Parses the output of FormatDouble (and ordinary decimal notation).
// Throws kSchema on malformed input.
double ParseDouble(std::string_view text);

}  // namespace slist

#endif  // SLIST_FORMAT_H_
