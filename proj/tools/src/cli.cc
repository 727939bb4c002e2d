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

#include "slist_tools/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <initializer_list>
#include <map>
#include <ostream>
#include <string_view>

#include "slist/error.h"
#include "slist_tools/commands.h"
#include "slist_tools/config.h"

namespace slist::tools {
namespace {

int ExitStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
      return kExitUsage;
    case ErrorCode::kNumerical:
      return kExitNumerical;
    case ErrorCode::kIo:
    case ErrorCode::kSchema:
    case ErrorCode::kData:
      return kExitData;
  }
  return kExitData;
}

// Options shared by every subcommand plus one string option per config key
// of the listed sections.
struct CommandOptions {
  std::string config_file;
  std::string preset;
  CLI::Option* preset_option = nullptr;
  std::map<const ConfigKey*, std::pair<CLI::Option*, std::string>> values;
};

CLI::App* AddCommand(CLI::App& app, std::string_view name,
                     std::string_view description,
                     std::initializer_list<std::string_view> sections,
                     bool with_preset, CommandOptions& options) {
  CLI::App* sub =
      app.add_subcommand(std::string(name), std::string(description));
  sub->add_option("--config", options.config_file, "INI configuration file");
  if (with_preset) {
    options.preset_option = sub->add_option("--preset", options.preset,
                                            "builtin hyperparameter preset");
  }
  for (const ConfigKey& key : ConfigKeys()) {
    if (std::find(sections.begin(), sections.end(), key.section) ==
        sections.end()) {
      continue;
    }
    auto& [option, value] = options.values[&key];
    option = sub->add_option("--" + std::string(key.flag), value,
                             std::string(key.help))
                 ->group(std::string(key.section));
  }
  return sub;
}

RunConfig Resolve(const CommandOptions& options) {
  RunConfig config;
  if (!options.config_file.empty())
    MergeConfigFile(options.config_file, config);
  if (options.preset_option != nullptr && options.preset_option->count() > 0) {
    const auto hyper = FindPreset(options.preset);
    if (!hyper) {
      throw Error(ErrorCode::kUsage, "unknown preset '" + options.preset + "'");
    }
    config.hyper = *hyper;
    config.kind = ModelKind::kSlist;
  }
  // Registry order, so that flags apply in the same order as file keys.
  for (const ConfigKey& key : ConfigKeys()) {
    const auto it = options.values.find(&key);
    if (it != options.values.end() && it->second.first->count() > 0) {
      key.set(config, it->second.second);
    }
  }
  return config;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Session-aware linear item recommenders", "slist"};
  app.require_subcommand(1);

  std::map<std::string, CommandOptions> commands;
  AddCommand(app, "preprocess", "filter a raw log and split it by days",
             {"data", "preprocess", "split", "output"}, false,
             commands["preprocess"]);
  AddCommand(app, "train", "fit a model and write it to --model",
             {"data", "preprocess", "model", "decay"}, true, commands["train"]);
  AddCommand(app, "eval", "iterative-revealing evaluation of a trained model",
             {"data", "preprocess", "model", "eval", "output"}, false,
             commands["eval"]);
  AddCommand(app, "recommend", "top-N recommendations for session prefixes",
             {"data", "model", "eval", "output"}, false, commands["recommend"]);
  AddCommand(app, "grid", "grid search scored on the validation split",
             {"data", "preprocess", "model", "decay", "eval", "grid", "output"},
             true, commands["grid"]);
  AddCommand(app, "synth", "generate a synthetic session log",
             {"synth", "output"}, false, commands["synth"]);
  AddCommand(app, "config", "print the effective configuration as INI",
             {"data", "preprocess", "split", "model", "decay", "eval", "grid",
              "output", "synth"},
             true, commands["config"]);
  app.add_subcommand("presets", "list builtin presets");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "presets") {
      for (const Preset& p : BuiltinPresets()) {
        out << p.name << '\t' << p.description << '\n';
      }
      return kExitOk;
    }
    const RunConfig config = Resolve(commands.at(name));
    if (name == "preprocess") {
      RunPreprocess(config, out);
    } else if (name == "train") {
      RunTrain(config, out);
    } else if (name == "eval") {
      RunEval(config, out);
    } else if (name == "recommend") {
      RunRecommend(config, out);
    } else if (name == "grid") {
      RunGrid(config, out);
    } else if (name == "synth") {
      RunSynth(config, out);
    } else {
      out << EmitConfig(config);
    }
  } catch (const Error& e) {
    err << "slist: " << e.what() << '\n';
    return ExitStatus(e.code());
  } catch (const std::bad_alloc&) {
    err << "slist: out of memory\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "slist: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace slist::tools
