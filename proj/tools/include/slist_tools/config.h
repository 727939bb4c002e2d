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

#ifndef SLIST_TOOLS_CONFIG_H_
#define SLIST_TOOLS_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slist/evaluation.h"
#include "slist/sessions.h"
#include "slist/solver.h"
#include "slist/synthetic.h"

namespace slist::tools {

struct DataConfig {
  std::string log;    // raw event log for preprocess
  std::string train;  // corpus container or raw log
  std::string valid;
  std::string test;
  std::string sessions;  // session prefixes to score
  LogSchema schema;
};

struct SplitConfig {
  int test_days = 1;
  int valid_days = 0;
};

// Hyperparameter value lists; an empty list leaves that axis at the base
// value from [model]/[decay].
struct GridConfig {
  std::vector<double> lambda;
  std::vector<double> xi;
  std::vector<double> alpha;
  std::vector<double> delta_pos;
  std::vector<double> delta_inf;
  std::vector<double> delta_time;
  Metric metric = Metric::kHitRate;
  std::size_t cutoff = 20;
  int jobs = 1;
};

struct OutputConfig {
  std::string dir = ".";          // preprocess output directory
  std::string report = "report";  // writes <report>.txt and <report>.kv
  std::string recommendations = "recommendations.tsv";
  std::string results = "grid.tsv";
  std::string preset = "best.ini";
  std::string log = "synthetic.tsv";
};

struct RunConfig {
  DataConfig data;
  PreprocessOptions preprocess;
  SplitConfig split;
  ModelKind kind = ModelKind::kSlist;
  std::string model_path = "model.slist";
  HyperParams hyper;
  EvalConfig eval;
  std::size_t top_n = 20;
  GridConfig grid;
  OutputConfig output;
  SynthParams synth;
};

// One configuration key: its file location, its command-line flag, and
// string conversions in both directions.
struct ConfigKey {
  std::string_view section;
  std::string_view name;
  std::string_view flag;  // long option without the leading dashes
  std::string_view help;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

// Every key, in emission order.
std::span<const ConfigKey> ConfigKeys();
const ConfigKey* FindConfigKey(std::string_view section, std::string_view name);

// Applies `text` (INI with sections) on top of `config`. A `preset` key in
// [model] is applied before the remaining keys. Unknown sections or keys
// are usage errors.
void MergeConfig(std::istream& in, RunConfig& config);
void MergeConfigFile(const std::filesystem::path& path, RunConfig& config);

// Full configuration as INI text; loading it into a default RunConfig and
// emitting again reproduces the same text.
std::string EmitConfig(const RunConfig& config);

// [model] and [decay] sections only.
std::string EmitPreset(ModelKind kind, const HyperParams& hyper);

struct Preset {
  std::string_view name;
  std::string_view description;
  HyperParams hyper;
};

std::span<const Preset> BuiltinPresets();
std::optional<HyperParams> FindPreset(std::string_view name);

// "HR@20" style metric selector.
std::pair<Metric, std::size_t> ParseMetricAt(std::string_view text);
std::string FormatMetricAt(Metric metric, std::size_t cutoff);

}  // namespace slist::tools

#endif  // SLIST_TOOLS_CONFIG_H_
