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

#include "slist/model_io.h"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

constexpr std::string_view kMagic = "slist-model";

std::uint64_t ToLittleEndian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) {
    return bits;
  } else {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) {
      out = (out << 8) | ((bits >> (8 * i)) & 0xff);
    }
    return out;
  }
}

std::string ReadLine(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kSchema, "truncated model header");
  }
  return line;
}

// Reads "<key> <value>" and returns the value text.
std::string ReadField(std::istream& in, std::string_view key) {
  const std::string line = ReadLine(in);
  if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
      line[key.size()] != ' ') {
    throw Error(ErrorCode::kSchema, "expected '" + std::string(key) +
                                        "' in model header, got '" + line +
                                        "'");
  }
  return line.substr(key.size() + 1);
}

std::size_t ParseSize(const std::string& text) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kSchema,
                "bad integer '" + text + "' in model header");
  }
  return value;
}

}  // namespace

void WriteModel(std::ostream& out, const ItemModel& model) {
  const Eigen::Index n = model.num_items();
  if (model.weights.cols() != n ||
      static_cast<std::size_t>(n) != model.vocab.size()) {
    throw Error(ErrorCode::kUsage, "model matrix does not match vocabulary");
  }
  const HyperParams& h = model.hyper;
  out << kMagic << ' ' << kModelFormatVersion << '\n'
      << "kind " << ModelKindName(model.kind) << '\n'
      << "n " << n << '\n'
      << "lambda " << FormatDouble(h.lambda) << '\n'
      << "xi " << FormatDouble(h.xi) << '\n'
      << "alpha " << FormatDouble(h.alpha) << '\n'
      << "delta_time " << FormatDouble(h.decay.time_days) << '\n'
      << "delta_pos " << FormatDouble(h.decay.position) << '\n'
      << "delta_inf " << FormatDouble(h.decay.inference) << '\n'
      << "decay_future " << (h.decay.decay_future ? 1 : 0) << '\n'
      << "vocab\n";
  for (const std::string& id : model.vocab.ids()) out << id << '\n';
  const std::size_t count =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  out << "payload " << count * sizeof(double) << '\n';

  std::vector<std::uint64_t> buffer(count);
  const double* data = model.weights.data();
  for (std::size_t i = 0; i < count; ++i) {
    buffer[i] = ToLittleEndian(std::bit_cast<std::uint64_t>(data[i]));
  }
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
  if (!out) throw Error(ErrorCode::kIo, "failed writing model payload");
}

ItemModel ReadModel(std::istream& in) {
  if (!in) throw Error(ErrorCode::kIo, "unreadable model stream");
  const std::string version = ReadField(in, kMagic);
  if (version != std::to_string(kModelFormatVersion)) {
    throw Error(ErrorCode::kSchema,
                "unsupported model format version " + version);
  }
  ItemModel model;
  const std::string kind = ReadField(in, "kind");
  const auto parsed_kind = ParseModelKind(kind);
  if (!parsed_kind)
    throw Error(ErrorCode::kSchema, "unknown model kind " + kind);
  model.kind = *parsed_kind;
  const std::size_t n = ParseSize(ReadField(in, "n"));
  HyperParams& h = model.hyper;
  h.lambda = ParseDouble(ReadField(in, "lambda"));
  h.xi = ParseDouble(ReadField(in, "xi"));
  h.alpha = ParseDouble(ReadField(in, "alpha"));
  h.decay.time_days = ParseDouble(ReadField(in, "delta_time"));
  h.decay.position = ParseDouble(ReadField(in, "delta_pos"));
  h.decay.inference = ParseDouble(ReadField(in, "delta_inf"));
  const std::string decay_future = ReadField(in, "decay_future");
  if (decay_future != "0" && decay_future != "1") {
    throw Error(ErrorCode::kSchema, "decay_future must be 0 or 1");
  }
  h.decay.decay_future = decay_future == "1";
  if (ReadLine(in) != "vocab") {
    throw Error(ErrorCode::kSchema, "expected 'vocab' in model header");
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(ReadLine(in));
  model.vocab = Vocabulary(std::move(ids));

  const std::size_t count = n * n;
  const std::size_t bytes = ParseSize(ReadField(in, "payload"));
  if (bytes != count * sizeof(double)) {
    throw Error(ErrorCode::kSchema, "payload size does not match n");
  }
  std::vector<std::uint64_t> buffer(count);
  in.read(reinterpret_cast<char*>(buffer.data()),
          static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    throw Error(ErrorCode::kSchema, "truncated model payload");
  }
  model.weights.resize(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(n));
  double* data = model.weights.data();
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<double>(ToLittleEndian(buffer[i]));
  }
  return model;
}

void WriteModelFile(const std::filesystem::path& path, const ItemModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  WriteModel(out, model);
}

ItemModel ReadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return ReadModel(in);
}

}  // namespace slist
