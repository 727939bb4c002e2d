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

#include "slist_tools/config.h"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "slist/error.h"
#include "slist/format.h"

namespace slist::tools {
namespace {

namespace pt = boost::property_tree;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void BadValue(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::kUsage,
              "invalid " + std::string(what) + " '" + std::string(text) + "'");
}

template <typename T>
T ParseInteger(std::string_view text, std::string_view what) {
  text = Trim(text);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadValue(what, text);
  }
  return value;
}

double ParseReal(std::string_view text, std::string_view what) {
  try {
    return ParseDouble(text);
  } catch (const Error&) {
    BadValue(what, text);
  }
}

bool ParseBool(std::string_view text) {
  const std::string_view t = Trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  BadValue("boolean", text);
}

std::string FormatBool(bool value) { return value ? "true" : "false"; }

std::vector<std::string_view> SplitList(std::string_view text) {
  std::vector<std::string_view> parts;
  text = Trim(text);
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    parts.push_back(Trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T, typename Fn>
std::string JoinList(const std::vector<T>& values, Fn format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format(values[i]);
  }
  return out;
}

std::vector<double> ParseRealList(std::string_view text,
                                  std::string_view what) {
  std::vector<double> values;
  for (std::string_view part : SplitList(text)) {
    values.push_back(ParseReal(part, what));
  }
  return values;
}

std::string FormatRealList(const std::vector<double>& values) {
  return JoinList(values, [](double v) { return FormatDouble(v); });
}

char ParseDelimiter(std::string_view text) {
  const std::string_view t = Trim(text);
  if (t == "auto" || t.empty()) return '\0';
  if (t == "tab" || t == "\\t") return '\t';
  if (t == "comma") return ',';
  if (t == "semicolon") return ';';
  if (t == "pipe") return '|';
  if (t.size() == 1) return t[0];
  BadValue("delimiter", text);
}

std::string FormatDelimiter(char d) {
  switch (d) {
    case '\0':
      return "auto";
    case '\t':
      return "tab";
    case ',':
      return "comma";
    case ';':
      return "semicolon";
    case '|':
      return "pipe";
    default:
      return std::string(1, d);
  }
}

ModelKind ParseKind(std::string_view text) {
  if (auto kind = ParseModelKind(Trim(text))) return *kind;
  BadValue("model kind", text);
}

std::string RealGet(double value) { return FormatDouble(value); }

// Shorthand for building the registry.
using Get = std::function<std::string(const RunConfig&)>;
using Set = std::function<void(RunConfig&, std::string_view)>;

std::vector<ConfigKey> BuildKeys() {
  std::vector<ConfigKey> keys;
  auto add = [&](std::string_view section, std::string_view name,
                 std::string_view flag, std::string_view help, Get get,
                 Set set) {
    keys.push_back(
        ConfigKey{section, name, flag, help, std::move(get), std::move(set)});
  };
  auto text = [&](std::string_view section, std::string_view name,
                  std::string_view flag, std::string_view help, auto member) {
    add(
        section, name, flag, help,
        [member](const RunConfig& c) {
          return member(const_cast<RunConfig&>(c));
        },
        [member](RunConfig& c, std::string_view v) {
          member(c) = std::string(Trim(v));
        });
  };

  text("data", "log", "log", "raw event log (preprocess)",
       [](RunConfig& c) -> std::string& { return c.data.log; });
  text("data", "train", "train", "training corpus or raw log",
       [](RunConfig& c) -> std::string& { return c.data.train; });
  text("data", "valid", "valid", "validation corpus or raw log",
       [](RunConfig& c) -> std::string& { return c.data.valid; });
  text("data", "test", "test", "test corpus or raw log",
       [](RunConfig& c) -> std::string& { return c.data.test; });
  text("data", "sessions", "sessions", "session prefixes to score (raw log)",
       [](RunConfig& c) -> std::string& { return c.data.sessions; });
  text("data", "session_column", "session-column", "session id column name",
       [](RunConfig& c) -> std::string& {
         return c.data.schema.session_column;
       });
  text("data", "item_column", "item-column", "item id column name",
       [](RunConfig& c) -> std::string& { return c.data.schema.item_column; });
  text("data", "time_column", "time-column", "timestamp column name (seconds)",
       [](RunConfig& c) -> std::string& { return c.data.schema.time_column; });
  add(
      "data", "delimiter", "delimiter",
      "auto, tab, comma, semicolon, pipe or one character",
      [](const RunConfig& c) {
        return FormatDelimiter(c.data.schema.delimiter);
      },
      [](RunConfig& c, std::string_view v) {
        c.data.schema.delimiter = ParseDelimiter(v);
      });

  add(
      "preprocess", "min_item_support", "min-item-support",
      "drop items seen fewer times than this",
      [](const RunConfig& c) {
        return std::to_string(c.preprocess.min_item_support);
      },
      [](RunConfig& c, std::string_view v) {
        c.preprocess.min_item_support =
            ParseInteger<std::size_t>(v, "min_item_support");
      });
  add(
      "preprocess", "min_session_length", "min-session-length",
      "drop sessions shorter than this",
      [](const RunConfig& c) {
        return std::to_string(c.preprocess.min_session_length);
      },
      [](RunConfig& c, std::string_view v) {
        c.preprocess.min_session_length =
            ParseInteger<std::size_t>(v, "min_session_length");
      });
  add(
      "preprocess", "until_stable", "until-stable",
      "repeat the filters until nothing changes",
      [](const RunConfig& c) { return FormatBool(c.preprocess.until_stable); },
      [](RunConfig& c, std::string_view v) {
        c.preprocess.until_stable = ParseBool(v);
      });

  add(
      "split", "test_days", "test-days", "days held out for testing",
      [](const RunConfig& c) { return std::to_string(c.split.test_days); },
      [](RunConfig& c, std::string_view v) {
        c.split.test_days = ParseInteger<int>(v, "test_days");
      });
  add(
      "split", "valid_days", "valid-days",
      "days before the test window held out for validation",
      [](const RunConfig& c) { return std::to_string(c.split.valid_days); },
      [](RunConfig& c, std::string_view v) {
        c.split.valid_days = ParseInteger<int>(v, "valid_days");
      });

  add(
      "model", "kind", "kind", "slis, slit, slist or ease",
      [](const RunConfig& c) { return std::string(ModelKindName(c.kind)); },
      [](RunConfig& c, std::string_view v) { c.kind = ParseKind(v); });
  text("model", "path", "model", "model file",
       [](RunConfig& c) -> std::string& { return c.model_path; });
  add(
      "model", "lambda", "lambda", "L2 regularization",
      [](const RunConfig& c) { return RealGet(c.hyper.lambda); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.lambda = ParseReal(v, "lambda");
      });
  add(
      "model", "xi", "xi", "diagonal cap for slis (inf disables)",
      [](const RunConfig& c) { return RealGet(c.hyper.xi); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.xi = ParseReal(v, "xi");
      });
  add(
      "model", "alpha", "alpha", "similarity/transition mix for slist",
      [](const RunConfig& c) { return RealGet(c.hyper.alpha); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.alpha = ParseReal(v, "alpha");
      });

  add(
      "decay", "time", "delta-time", "session recency decay, days",
      [](const RunConfig& c) { return RealGet(c.hyper.decay.time_days); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.decay.time_days = ParseReal(v, "delta_time");
      });
  add(
      "decay", "position", "delta-pos", "training position decay",
      [](const RunConfig& c) { return RealGet(c.hyper.decay.position); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.decay.position = ParseReal(v, "delta_pos");
      });
  add(
      "decay", "inference", "delta-inf", "inference position decay",
      [](const RunConfig& c) { return RealGet(c.hyper.decay.inference); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.decay.inference = ParseReal(v, "delta_inf");
      });
  add(
      "decay", "future", "decay-future",
      "also decay future items of partial sessions",
      [](const RunConfig& c) { return FormatBool(c.hyper.decay.decay_future); },
      [](RunConfig& c, std::string_view v) {
        c.hyper.decay.decay_future = ParseBool(v);
      });

  add(
      "eval", "cutoffs", "cutoffs", "comma-separated list cut-offs",
      [](const RunConfig& c) {
        return JoinList(c.eval.cutoffs,
                        [](std::size_t k) { return std::to_string(k); });
      },
      [](RunConfig& c, std::string_view v) {
        c.eval.cutoffs.clear();
        for (std::string_view part : SplitList(v)) {
          c.eval.cutoffs.push_back(ParseInteger<std::size_t>(part, "cutoff"));
        }
      });
  add(
      "eval", "metrics", "metrics",
      "comma-separated subset of HR,MRR,Recall,MAP",
      [](const RunConfig& c) {
        return JoinList(c.eval.metrics,
                        [](Metric m) { return std::string(MetricName(m)); });
      },
      [](RunConfig& c, std::string_view v) {
        c.eval.metrics.clear();
        for (std::string_view part : SplitList(v)) {
          const auto metric = ParseMetric(part);
          if (!metric) BadValue("metric", part);
          c.eval.metrics.push_back(*metric);
        }
      });
  add(
      "eval", "map_denominator", "map-denominator", "relevant or min",
      [](const RunConfig& c) {
        return std::string(c.eval.map_denominator == MapDenominator::kRelevant
                               ? "relevant"
                               : "min");
      },
      [](RunConfig& c, std::string_view v) {
        const std::string_view t = Trim(v);
        if (t == "relevant") {
          c.eval.map_denominator = MapDenominator::kRelevant;
        } else if (t == "min") {
          c.eval.map_denominator = MapDenominator::kMinCutoff;
        } else {
          BadValue("map denominator", v);
        }
      });
  add(
      "eval", "top_n", "top-n", "recommendations per session",
      [](const RunConfig& c) { return std::to_string(c.top_n); },
      [](RunConfig& c, std::string_view v) {
        c.top_n = ParseInteger<std::size_t>(v, "top_n");
      });

  auto list = [&](std::string_view name, std::string_view flag,
                  std::vector<double> GridConfig::* member) {
    add(
        "grid", name, flag, "comma-separated values",
        [member](const RunConfig& c) { return FormatRealList(c.grid.*member); },
        [member, name](RunConfig& c, std::string_view v) {
          c.grid.*member = ParseRealList(v, name);
        });
  };
  list("lambda", "grid-lambda", &GridConfig::lambda);
  list("xi", "grid-xi", &GridConfig::xi);
  list("alpha", "grid-alpha", &GridConfig::alpha);
  list("delta_pos", "grid-delta-pos", &GridConfig::delta_pos);
  list("delta_inf", "grid-delta-inf", &GridConfig::delta_inf);
  list("delta_time", "grid-delta-time", &GridConfig::delta_time);
  add(
      "grid", "metric", "grid-metric", "ranking metric, e.g. HR@20",
      [](const RunConfig& c) {
        return FormatMetricAt(c.grid.metric, c.grid.cutoff);
      },
      [](RunConfig& c, std::string_view v) {
        std::tie(c.grid.metric, c.grid.cutoff) = ParseMetricAt(v);
      });
  add(
      "grid", "jobs", "jobs", "grid points evaluated in parallel",
      [](const RunConfig& c) { return std::to_string(c.grid.jobs); },
      [](RunConfig& c, std::string_view v) {
        c.grid.jobs = ParseInteger<int>(v, "jobs");
      });

  text("output", "dir", "out-dir", "directory for preprocessed corpora",
       [](RunConfig& c) -> std::string& { return c.output.dir; });
  text("output", "report", "report", "report prefix (.txt and .kv)",
       [](RunConfig& c) -> std::string& { return c.output.report; });
  text("output", "recommendations", "recommendations", "recommendation table",
       [](RunConfig& c) -> std::string& { return c.output.recommendations; });
  text("output", "results", "results", "grid results table",
       [](RunConfig& c) -> std::string& { return c.output.results; });
  text("output", "preset", "best-preset", "best grid point as a preset file",
       [](RunConfig& c) -> std::string& { return c.output.preset; });
  text("output", "log", "out-log", "synthetic log file",
       [](RunConfig& c) -> std::string& { return c.output.log; });

  auto size = [&](std::string_view name, std::string_view flag,
                  std::string_view help, std::size_t SynthParams::* member) {
    add(
        "synth", name, flag, help,
        [member](const RunConfig& c) {
          return std::to_string(c.synth.*member);
        },
        [member, name](RunConfig& c, std::string_view v) {
          c.synth.*member = ParseInteger<std::size_t>(v, name);
        });
  };
  size("num_sessions", "num-sessions", "sessions to generate",
       &SynthParams::num_sessions);
  size("num_items", "num-items", "catalogue size", &SynthParams::num_items);
  size("min_length", "min-length", "shortest session",
       &SynthParams::min_length);
  size("max_length", "max-length", "longest session", &SynthParams::max_length);
  add(
      "synth", "structure", "structure", "sequential, cooccurrence or mixed",
      [](const RunConfig& c) {
        return std::string(SynthStructureName(c.synth.structure));
      },
      [](RunConfig& c, std::string_view v) {
        const auto s = ParseSynthStructure(Trim(v));
        if (!s) BadValue("structure", v);
        c.synth.structure = *s;
      });
  add(
      "synth", "sequential_share", "sequential-share",
      "share of chain sessions in mixed mode",
      [](const RunConfig& c) { return RealGet(c.synth.sequential_share); },
      [](RunConfig& c, std::string_view v) {
        c.synth.sequential_share = ParseReal(v, "sequential_share");
      });
  size("branching", "branching", "successors per item in chains",
       &SynthParams::branching);
  size("bundle_size", "bundle-size", "items per co-occurrence bundle",
       &SynthParams::bundle_size);
  add(
      "synth", "with_replacement", "with-replacement",
      "draw bundle items independently",
      [](const RunConfig& c) {
        return FormatBool(c.synth.bundle_with_replacement);
      },
      [](RunConfig& c, std::string_view v) {
        c.synth.bundle_with_replacement = ParseBool(v);
      });
  add(
      "synth", "repeat_probability", "repeat-probability",
      "chance an event re-consumes an earlier item",
      [](const RunConfig& c) { return RealGet(c.synth.repeat_probability); },
      [](RunConfig& c, std::string_view v) {
        c.synth.repeat_probability = ParseReal(v, "repeat_probability");
      });
  add(
      "synth", "span_days", "span-days", "window over which sessions start",
      [](const RunConfig& c) { return RealGet(c.synth.span_days); },
      [](RunConfig& c, std::string_view v) {
        c.synth.span_days = ParseReal(v, "span_days");
      });
  add(
      "synth", "seed", "seed", "random seed",
      [](const RunConfig& c) { return std::to_string(c.synth.seed); },
      [](RunConfig& c, std::string_view v) {
        c.synth.seed = ParseInteger<std::uint64_t>(v, "seed");
      });
  return keys;
}

HyperParams MakePreset(double lambda, double alpha, double delta_pos,
                       double delta_inf, double delta_time) {
  HyperParams h;
  h.lambda = lambda;
  h.alpha = alpha;
  h.decay.position = delta_pos;
  h.decay.inference = delta_inf;
  h.decay.time_days = delta_time;
  return h;
}

void ApplyTree(const pt::ptree& tree, RunConfig& config) {
  if (auto preset = tree.get_optional<std::string>("model.preset")) {
    const auto hyper = FindPreset(Trim(*preset));
    if (!hyper) BadValue("preset", *preset);
    config.hyper = *hyper;
    config.kind = ModelKind::kSlist;
  }
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw Error(ErrorCode::kUsage, "key '" + section + "' outside a section");
    }
    for (const auto& [name, value] : entries) {
      if (section == "model" && name == "preset") continue;
      const ConfigKey* key = FindConfigKey(section, name);
      if (key == nullptr) {
        throw Error(ErrorCode::kUsage,
                    "unknown config key '" + section + "." + name + "'");
      }
      key->set(config, value.data());
    }
  }
}

}  // namespace

std::span<const ConfigKey> ConfigKeys() {
  static const std::vector<ConfigKey> keys = BuildKeys();
  return keys;
}

const ConfigKey* FindConfigKey(std::string_view section,
                               std::string_view name) {
  for (const ConfigKey& key : ConfigKeys()) {
    if (key.section == section && key.name == name) return &key;
  }
  return nullptr;
}

void MergeConfig(std::istream& in, RunConfig& config) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kUsage, std::string("config: ") + e.what());
  }
  ApplyTree(tree, config);
}

void MergeConfigFile(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  MergeConfig(in, config);
}

std::string EmitConfig(const RunConfig& config) {
  pt::ptree tree;
  for (const ConfigKey& key : ConfigKeys()) {
    tree.put(pt::ptree::path_type(std::string(key.section) + "." +
                                  std::string(key.name)),
             key.get(config));
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

std::string EmitPreset(ModelKind kind, const HyperParams& hyper) {
  RunConfig config;
  config.kind = kind;
  config.hyper = hyper;
  pt::ptree tree;
  for (const ConfigKey& key : ConfigKeys()) {
    if ((key.section == "model" && key.name != "path") ||
        key.section == "decay") {
      tree.put(std::string(key.section) + "." + std::string(key.name),
               key.get(config));
    }
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

std::span<const Preset> BuiltinPresets() {
  static const std::vector<Preset> presets{
      {"yc-1-64", "YooChoose 1/64", MakePreset(10, 0.4, 1, 1, 4)},
      {"yc-1-4", "YooChoose 1/4", MakePreset(10, 0.2, 1, 1, 8)},
      {"digi1", "Diginetica, single split", MakePreset(10, 0.8, 1, 2, 128)},
      {"yc", "YooChoose, 5 splits", MakePreset(10, 0.2, 1, 1, 8)},
      {"digi5", "Diginetica, 5 splits", MakePreset(10, 0.8, 1, 2, 256)},
      {"rr", "RetailRocket", MakePreset(10, 0.2, 0.25, 4, 256)},
      {"nowp", "NowPlaying", MakePreset(10, 0.8, 1, 1, 128)},
  };
  return presets;
}

std::optional<HyperParams> FindPreset(std::string_view name) {
  for (const Preset& p : BuiltinPresets()) {
    if (p.name == name) return p.hyper;
  }
  return std::nullopt;
}

std::pair<Metric, std::size_t> ParseMetricAt(std::string_view text) {
  text = Trim(text);
  const std::size_t at = text.find('@');
  if (at == std::string_view::npos) BadValue("metric selector", text);
  const auto metric = ParseMetric(text.substr(0, at));
  if (!metric) BadValue("metric selector", text);
  const auto cutoff = ParseInteger<std::size_t>(text.substr(at + 1), "cutoff");
  if (cutoff == 0) BadValue("metric selector", text);
  return {*metric, cutoff};
}

std::string FormatMetricAt(Metric metric, std::size_t cutoff) {
  return std::string(MetricName(metric)) + "@" + std::to_string(cutoff);
}

}  // namespace slist::tools
