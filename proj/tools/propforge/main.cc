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

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "propforge/cli/commands.h"
#include "propforge/cli/workspace.h"

namespace {

using propforge::cli::AnnotatorChoice;
using propforge::cli::CommandResult;
using propforge::cli::PipelineConfig;
using propforge::cli::Workspace;

struct ProviderFlags {
  bool mock = false;
  std::string fixtures;
};

void AddProviderFlags(CLI::App* cmd, ProviderFlags* flags) {
  cmd->add_flag("--mock", flags->mock, "replay recorded fixtures instead of calling an endpoint");
  cmd->add_option("--fixtures", flags->fixtures,
                  "fixture directory for --mock (default <workspace>/fixtures)");
}

void ApplyProviderFlags(const ProviderFlags& flags, PipelineConfig* config) {
  config->mock = flags.mock || !flags.fixtures.empty();
  if (!flags.fixtures.empty()) config->fixtures_dir = flags.fixtures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propforge: executable GUI properties from natural-language descriptions"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json_output = false;
  std::string data_dir = PROPFORGE_DATA_DIR;
  std::string workspace;
  app.add_flag("--json", json_output, "machine-readable output on stdout");
  app.add_option("--data-dir", data_dir, "bundled prompts, demos and templates");
  app.add_option("--workspace,-w", workspace, "workspace directory")->default_val(".");

  // context build
  auto* context = app.add_subcommand("context", "widget context store");
  context->require_subcommand(1);
  auto* context_build = context->add_subcommand("build", "captures/ -> context.json");
  std::string annotator = "heuristic";
  ProviderFlags context_flags;
  context_build->add_option("--annotator", annotator)
      ->check(CLI::IsMember({"heuristic", "mllm"}));
  AddProviderFlags(context_build, &context_flags);

  // synthesize
  auto* synthesize = app.add_subcommand("synthesize", "descriptions -> properties");
  propforge::cli::SynthesizeOptions synth;
  ProviderFlags synth_flags;
  int budget = -1;
  int repairs = -1;
  std::vector<std::string> description_files;
  synthesize->add_flag("--baseline", synth.baseline, "offline rule-based synthesis");
  synthesize->add_option("--budget", budget, "widget context entries per prompt")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--repairs", repairs, "repair turns per description")
      ->check(CLI::NonNegativeNumber);
  synthesize->add_option("descriptions", description_files,
                         "description files (default descriptions/*.txt)");
  AddProviderFlags(synthesize, &synth_flags);

  // check
  auto* check = app.add_subcommand("check", "judge generated properties");
  propforge::cli::CheckOptions check_opts;
  std::string generated, ground_truth, models;
  check->add_option("--generated", generated);
  check->add_option("--ground-truth", ground_truth);
  check->add_option("--models", models, "model assignments JSON");

  // paraphrase
  auto* paraphrase = app.add_subcommand("paraphrase", "diverse paraphrase selection");
  propforge::cli::ParaphraseOptions para;
  std::string description, pool;
  ProviderFlags para_flags;
  paraphrase->add_option("--description", description)->required()->check(CLI::ExistingFile);
  paraphrase->add_option("--k", para.k)->default_val(10);
  paraphrase->add_option("--calls", para.calls)->default_val(10);
  paraphrase->add_option("--per-call", para.per_call)->default_val(10);
  paraphrase->add_option("--pool", pool, "existing paraphrases.json")->check(CLI::ExistingFile);
  AddProviderFlags(paraphrase, &para_flags);

  // complexity
  auto* complexity = app.add_subcommand("complexity", "complexity metrics table");
  propforge::cli::ComplexityOptions cx;
  std::vector<std::string> cx_files;
  complexity->add_option("files", cx_files, ".prop files or description files")
      ->check(CLI::ExistingFile);
  complexity->add_option("--text", cx.texts, "literal description text");
  complexity->add_flag("--markdown", cx.markdown);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a property on an app model");
  propforge::cli::SimulateOptions sim;
  std::string sim_model, sim_property, sim_export;
  simulate->add_option("--model", sim_model)->required()->check(CLI::ExistingFile);
  simulate->add_option("--property", sim_property)->check(CLI::ExistingFile);
  simulate->add_option("--export-captures", sim_export);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const Workspace ws{workspace};
  try {
    PipelineConfig config = propforge::cli::ConfigFromEnv(data_dir);
    CommandResult result;
    if (context_build->parsed()) {
      config.annotator =
          annotator == "mllm" ? AnnotatorChoice::kMllm : AnnotatorChoice::kHeuristic;
      ApplyProviderFlags(context_flags, &config);
      result = propforge::cli::RunContextBuild(ws, config);
    } else if (synthesize->parsed()) {
      ApplyProviderFlags(synth_flags, &config);
      if (budget > 0) config.context_budget = static_cast<std::size_t>(budget);
      if (repairs >= 0) config.repair_budget = repairs;
      for (const auto& f : description_files) synth.descriptions.emplace_back(f);
      result = propforge::cli::RunSynthesize(ws, config, synth);
    } else if (check->parsed()) {
      if (!generated.empty()) check_opts.generated = generated;
      if (!ground_truth.empty()) check_opts.ground_truth = ground_truth;
      if (!models.empty()) check_opts.assignments = models;
      result = propforge::cli::RunCheck(ws, check_opts);
    } else if (paraphrase->parsed()) {
      ApplyProviderFlags(para_flags, &config);
      para.description = description;
      if (!pool.empty()) para.pool = pool;
      result = propforge::cli::RunParaphrase(ws, config, para);
    } else if (complexity->parsed()) {
      for (const auto& f : cx_files) cx.files.emplace_back(f);
      result = propforge::cli::RunComplexity(cx);
    } else if (simulate->parsed()) {
      sim.model = sim_model;
      if (!sim_property.empty()) sim.property = sim_property;
      if (!sim_export.empty()) sim.export_captures = sim_export;
      result = propforge::cli::RunSimulate(sim);
    } else {
      std::cerr << app.help();
      return 2;
    }
    if (json_output) {
      std::cout << result.json.dump(2) << "\n";
    } else {
      std::cout << result.text;
    }
    return result.exit_code;
  } catch (const propforge::Error& e) {
    if (json_output) {
      nlohmann::ordered_json j = {
          {"error", {{"code", propforge::ErrorCodeName(e.code())}, {"message", e.what()}}}};
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "propforge: " << e.what() << "\n";
    return propforge::cli::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "propforge: " << e.what() << "\n";
    return 1;
  }
}
