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

#ifndef SLIST_MODEL_IO_H_
#define SLIST_MODEL_IO_H_

// Model container: a text header followed by the raw matrix payload.
//
//   slist-model 1
//   kind <slis|slit|slist|ease>
//   n <items>
//   lambda <x>  xi <x>  alpha <x>            (one key per line)
//   delta_time <x>  delta_pos <x>  delta_inf <x>  decay_future <0|1>
//   vocab
//   <item id>                                (n lines)
//   payload <bytes>
//   <n*n float64, little-endian, row-major>
//
// Reals in the header use shortest round-trip text, so a model written and
// read back is bit-identical.

#include <filesystem>
#include <iosfwd>

#include "slist/solver.h"

namespace slist {

inline constexpr int kModelFormatVersion = 1;

void WriteModel(std::ostream& out, const ItemModel& model);
ItemModel ReadModel(std::istream& in);

void WriteModelFile(const std::filesystem::path& path, const ItemModel& model);
ItemModel ReadModelFile(const std::filesystem::path& path);

}  // namespace slist

#endif  // SLIST_MODEL_IO_H_
