// Copyright 2026 The PropForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `propforge` subcommands as library calls. Each returns its exit code
// together with a human-readable and a JSON rendering of its summary; the
// binary chooses which one to print. Errors that abort a whole command are
// thrown as propforge::Error and mapped through ExitCodeFor.
#ifndef PROPFORGE_CLI_COMMANDS_H_
#define PROPFORGE_CLI_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/cli/workspace.h"

namespace propforge::cli {

struct CommandResult {
  int exit_code = 0;
  std::string text;
  nlohmann::ordered_json json;
};

// captures/ -> context.json. Throws NoCaptures.
CommandResult RunContextBuild(const Workspace& ws, const PipelineConfig& config);

struct SynthesizeOptions {
  bool baseline = false;
  // Description files; empty means every descriptions/*.txt.
  std::vector<fs::path> descriptions;
};

// descriptions -> properties/<name>.prop plus properties/synthesis_log.json.
// Per-description failures are logged and give exit code 1. Throws
// MissingContext.
CommandResult RunSynthesize(const Workspace& ws, const PipelineConfig& config,
                            const SynthesizeOptions& options);

struct CheckOptions {
  std::optional<fs::path> generated;     // default properties/
  std::optional<fs::path> ground_truth;  // default ground_truth/
  std::optional<fs::path> assignments;   // default models/assignments.json
};

// Judges every generated property against its ground truth and writes
// reports/report.json and reports/report.md. Exit code 1 when any property
// is incorrect. Throws NameMismatch.
CommandResult RunCheck(const Workspace& ws, const CheckOptions& options);

struct ParaphraseOptions {
  fs::path description;
  int k = 10;
  int calls = 10;
  int per_call = 10;
  std::optional<fs::path> pool;  // skip generation and select from this pool
};

// Writes reports/paraphrases.json and reports/selection.json.
CommandResult RunParaphrase(const Workspace& ws, const PipelineConfig& config,
                            const ParaphraseOptions& options);

struct ComplexityOptions {
  // .prop files get every metric; anything else is read as a description
  // and only gets a character count.
  std::vector<fs::path> files;
  std::vector<std::string> texts;
  bool markdown = false;
};

CommandResult RunComplexity(const ComplexityOptions& options);

struct SimulateOptions {
  fs::path model;
  std::optional<fs::path> property;
  std::optional<fs::path> export_captures;
};

// Runs a property on an app model, or exports captures from it.
CommandResult RunSimulate(const SimulateOptions& options);

}  // namespace propforge::cli

#endif  // PROPFORGE_CLI_COMMANDS_H_
