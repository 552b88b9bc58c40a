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

#include "propforge/cli/commands.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "propforge/capture/page_capture.h"
#include "propforge/capture/raster.h"
#include "propforge/common/file_io.h"
#include "propforge/common/parallel.h"
#include "propforge/common/text.h"
#include "propforge/evaluation/judge.h"
#include "propforge/grounding/annotation.h"
#include "propforge/grounding/context_store.h"
#include "propforge/grounding/store_builder.h"
#include "propforge/propdsl/complexity.h"
#include "propforge/propdsl/parser.h"
#include "propforge/propdsl/printer.h"
#include "propforge/propdsl/validator.h"
#include "propforge/robustness/selection.h"
#include "propforge/simulator/app_model.h"
#include "propforge/simulator/executor.h"
#include "propforge/synthesis/baseline.h"
#include "propforge/synthesis/description.h"
#include "propforge/synthesis/synthesizer.h"

namespace propforge::cli {

using nlohmann::ordered_json;

namespace {

std::string Pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<fs::path> Subdirectories(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

grounding::WidgetContextStore RequireContext(const Workspace& ws) {
  if (!fs::exists(ws.context())) {
    throw Error(ErrorCode::kMissingContext,
                ws.context().string() + " not found; run `propforge context build` first");
  }
  return grounding::LoadStore(ws.context());
}

std::string FormatMean(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << v;
  return out.str();
}

}  // namespace

CommandResult RunContextBuild(const Workspace& ws, const PipelineConfig& config) {
  WorkspaceLock lock(ws);
  const auto dirs = Subdirectories(ws.captures());
  if (dirs.empty()) {
    throw Error(ErrorCode::kNoCaptures, "no capture directories under " +
                                            ws.captures().string());
  }
  std::vector<capture::PageCapture> captures;
  std::map<std::string, fs::path> capture_dirs;
  for (const auto& d : dirs) {
    captures.push_back(capture::LoadCaptureDirectory(d));
    capture_dirs[captures.back().capture_id] = d;
  }

  grounding::WidgetContextStore store;
  if (config.annotator == AnnotatorChoice::kHeuristic) {
    grounding::HeuristicAnnotator annotator;
    store = grounding::BuildContextStore(captures, annotator, config.concurrency);
  } else {
    auto provider = MakeProvider(ws, config, "PF_MLLM_MODEL");
    auto loader = [&capture_dirs](const capture::PageCapture& page)
        -> std::optional<capture::RasterImage> {
      auto it = capture_dirs.find(page.capture_id);
      if (it == capture_dirs.end() || !page.screenshot_path) return std::nullopt;
      try {
        return capture::LoadPng(it->second / *page.screenshot_path);
      } catch (const Error&) {
        return std::nullopt;  // degrade to a text-only prompt
      }
    };
    grounding::MllmAnnotator annotator(
        *provider, grounding::LoadAnnotationDemos(config.data_dir / "annotation_demos.json"),
        loader);
    store = grounding::BuildContextStore(captures, annotator, config.concurrency);
  }
  grounding::SaveStore(store, ws.context());

  const auto annotated = std::count_if(store.widgets.begin(), store.widgets.end(),
                                       [](const auto& w) { return w.annotation.has_value(); });
  CommandResult r;
  r.json = {{"context", ws.context().string()},
            {"captures", captures.size()},
            {"widgets", store.widgets.size()},
            {"annotated", annotated}};
  r.text = "context: " + std::to_string(store.widgets.size()) + " widgets (" +
           std::to_string(annotated) + " annotated) from " +
           std::to_string(captures.size()) + " captures -> " + ws.context().string() + "\n";
  return r;
}

CommandResult RunSynthesize(const Workspace& ws, const PipelineConfig& config,
                            const SynthesizeOptions& options) {
  WorkspaceLock lock(ws);
  const auto store = RequireContext(ws);
  auto files = options.descriptions.empty() ? ListFiles(ws.descriptions(), ".txt")
                                            : options.descriptions;
  if (files.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no descriptions under " + ws.descriptions().string());
  }

  std::unique_ptr<llm::ChatProvider> provider;
  if (!options.baseline) provider = MakeProvider(ws, config, "PF_LLM_MODEL");

  std::vector<ordered_json> log(files.size());
  std::vector<std::string> outputs(files.size());
  ParallelFor(files.size(), config.concurrency, [&](std::size_t i) {
    const std::string name = files[i].stem().string();
    ordered_json entry = {{"name", name}};
    try {
      const auto desc = synthesis::LoadDescriptionFile(files[i]);
      propdsl::PropertyAST ast;
      if (options.baseline) {
        ast = synthesis::BaselineSynthesize(desc, store);
        entry["mode"] = "baseline";
        entry["retries"] = 0;
      } else {
        synthesis::SynthesisOptions so;
        so.repair_budget = config.repair_budget;
        so.store = &store;
        auto result = synthesis::Synthesize(*provider, WorkspacePrompt(config, store, desc), so);
        entry["mode"] = "llm";
        entry["model"] = result.provider_model;
        entry["retries"] = result.retries_used;
        std::vector<std::string> warnings;
        for (const auto& d : result.warnings) warnings.push_back(propdsl::FormatDiagnostic(d));
        entry["warnings"] = warnings;
        ast = std::move(result.ast);
      }
      outputs[i] = propdsl::PrintProperty(ast);
      entry["status"] = "ok";
      entry["output"] = (ws.properties() / (name + ".prop")).string();
    } catch (const Error& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
    }
    log[i] = std::move(entry);
  });

  std::size_t ok = 0;
  std::string text;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].stem().string();
    if (log[i]["status"] == "ok") {
      WriteFileAtomic(ws.properties() / (name + ".prop"), outputs[i]);
      ++ok;
      text += "ok    " + name + " (retries " + log[i]["retries"].dump() + ")\n";
    } else {
      text += "error " + name + ": " + log[i]["error"].get<std::string>() + "\n";
    }
  }
  ordered_json doc = {{"total", files.size()}, {"succeeded", ok}, {"entries", log}};
  WriteFileAtomic(ws.properties() / "synthesis_log.json", Pretty(doc));

  CommandResult r;
  r.exit_code = ok == files.size() ? 0 : 1;
  r.json = doc;
  r.text = text + std::to_string(ok) + "/" + std::to_string(files.size()) +
           " properties synthesized\n";
  return r;
}

namespace {

struct Assignments {
  std::optional<std::pair<fs::path, fs::path>> fallback;
  std::map<std::string, std::pair<fs::path, fs::path>> per_property;
};

Assignments LoadAssignments(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kNameMismatch, "model assignments " + path.string() + " not found");
  }
  const auto doc = nlohmann::json::parse(ReadFile(path), nullptr, false);
  const fs::path base = path.parent_path();
  auto pair_of = [&](const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("correct") || !j.contains("buggy") ||
        !j["correct"].is_string() || !j["buggy"].is_string()) {
      throw Error(ErrorCode::kSchemaError,
                  path.string() + ": model entries need string fields correct and buggy");
    }
    return std::make_pair(base / j["correct"].get<std::string>(),
                          base / j["buggy"].get<std::string>());
  };
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, path.string() + " is not an object");
  Assignments a;
  if (doc.contains("default")) a.fallback = pair_of(doc["default"]);
  if (doc.contains("properties")) {
    if (!doc["properties"].is_object()) {
      throw Error(ErrorCode::kSchemaError, path.string() + ": properties must be an object");
    }
    for (const auto& [name, entry] : doc["properties"].items()) {
      a.per_property[name] = pair_of(entry);
    }
  }
  return a;
}

std::map<std::string, fs::path> ByStem(const std::vector<fs::path>& files) {
  std::map<std::string, fs::path> out;
  for (const auto& f : files) out[f.stem().string()] = f;
  return out;
}

}  // namespace

CommandResult RunCheck(const Workspace& ws, const CheckOptions& options) {
  WorkspaceLock lock(ws);
  const auto gen = ByStem(ListFiles(options.generated.value_or(ws.properties()), ".prop"));
  const auto gt = ByStem(ListFiles(options.ground_truth.value_or(ws.ground_truth()), ".prop"));
  if (gen.empty()) throw Error(ErrorCode::kNameMismatch, "no generated properties to check");

  std::vector<std::string> problems;
  for (const auto& [name, _] : gen) {
    if (!gt.count(name)) problems.push_back(name + " has no ground truth");
  }
  for (const auto& [name, _] : gt) {
    if (!gen.count(name)) problems.push_back(name + " has no generated property");
  }
  const auto assignments =
      LoadAssignments(options.assignments.value_or(ws.models() / "assignments.json"));
  for (const auto& [name, _] : gen) {
    if (!assignments.per_property.count(name) && !assignments.fallback) {
      problems.push_back(name + " has no model pair");
    }
  }
  if (!problems.empty()) throw Error(ErrorCode::kNameMismatch, Join(problems, "; "));

  const auto store = RequireContext(ws);
  std::map<fs::path, simulator::AppModel> models;
  auto model_at = [&](const fs::path& p) -> const simulator::AppModel& {
    auto it = models.find(p);
    if (it == models.end()) it = models.emplace(p, simulator::LoadAppModel(p)).first;
    return it->second;
  };

  std::vector<evaluation::ReportEntry> entries;
  std::string text;
  for (const auto& [name, gen_path] : gen) {
    const auto& paths = assignments.per_property.count(name)
                            ? assignments.per_property.at(name)
                            : *assignments.fallback;
    const evaluation::ModelPair pair{model_at(paths.first), model_at(paths.second)};
    const auto gen_ast = propdsl::ParseProperty(ReadFile(gen_path));
    const auto gt_ast = propdsl::ParseProperty(ReadFile(gt.at(name)));
    auto report = evaluation::Judge(pair, gen_ast, gt_ast, store);
    text += std::string(report.correct ? "correct   " : "incorrect ") + name;
    if (!report.correct) text += " (" + std::string(evaluation::SymptomName(report.symptom)) + ")";
    text += "\n";
    entries.push_back({name, std::move(report)});
  }

  const auto doc = evaluation::ReportToJson(entries);
  WriteFileAtomic(ws.reports() / "report.json", Pretty(doc));
  WriteFileAtomic(ws.reports() / "report.md", evaluation::ReportToMarkdown(entries));

  const auto correct = doc["correct"].get<std::size_t>();
  CommandResult r;
  r.exit_code = correct == entries.size() ? 0 : 1;
  r.json = doc;
  r.text = text + "accuracy " + std::to_string(correct) + "/" +
           std::to_string(entries.size()) + "\n";
  return r;
}

CommandResult RunParaphrase(const Workspace& ws, const PipelineConfig& config,
                            const ParaphraseOptions& options) {
  if (options.calls < 1 || options.per_call < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--calls and --per-call must be at least 1");
  }
  WorkspaceLock lock(ws);
  const std::string description(Trim(ReadFile(options.description)));
  robustness::ParaphrasePool pool;
  if (options.pool) {
    pool = robustness::PoolFromJson(nlohmann::json::parse(ReadFile(*options.pool), nullptr, false));
  } else {
    auto provider = MakeProvider(ws, config, "PF_LLM_MODEL");
    pool = robustness::GenerateParaphrases(*provider,
                                           ReadFile(config.data_dir / "paraphrase.prompt"),
                                           description, options.calls, options.per_call);
  }
  const auto selection =
      robustness::GreedySelect(pool, options.k, robustness::BleuConfig{}, config.concurrency);

  const fs::path out = ws.reports() / "paraphrase" / options.description.stem();
  WriteFileAtomic(out / "paraphrases.json", Pretty(robustness::PoolToJson(pool)));
  const auto sel_json = robustness::SelectionToJson(selection);
  WriteFileAtomic(out / "selection.json", Pretty(sel_json));

  CommandResult r;
  r.json = {{"pool_size", pool.candidates.size()},
            {"warnings", pool.warnings},
            {"paraphrases", (out / "paraphrases.json").string()},
            {"selection", sel_json}};
  std::string text;
  for (const auto& w : pool.warnings) text += "warning: " + w + "\n";
  for (std::size_t i = 0; i < selection.selected.size(); ++i) {
    text += std::to_string(i + 1) + ". " + selection.selected[i] + "\n";
  }
  r.text = text + "selected " + std::to_string(selection.selected.size()) + " of " +
           std::to_string(pool.candidates.size()) + " (avg pairwise BLEU " +
           FormatMean(selection.objective) + ")\n";
  return r;
}

CommandResult RunComplexity(const ComplexityOptions& options) {
  struct Row {
    std::string item;
    std::optional<propdsl::ComplexityMetrics> metrics;  // properties only
    std::int64_t chars = 0;
    std::string error;
  };
  std::vector<Row> rows;
  for (const auto& f : options.files) {
    Row row{f.string(), std::nullopt, 0, ""};
    try {
      const std::string text = ReadFile(f);
      if (f.extension() == ".prop") {
        row.metrics = propdsl::Complexity(propdsl::ParseProperty(text));
        row.chars = row.metrics->char_count;
      } else {
        row.chars = propdsl::CharComplexity(Trim(text));
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  for (const auto& t : options.texts) rows.push_back({t, std::nullopt, propdsl::CharComplexity(t), ""});
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to measure");

  double sums[4] = {0, 0, 0, 0};
  int props = 0;
  int measured = 0;
  ordered_json items = ordered_json::array();
  std::string tsv = "item\tclauses\toperators\tevents\tchars\n";
  std::string md = "| item | clauses | operators | events | chars |\n|---|---|---|---|---|\n";
  auto cell = [](const Row& r, int which) -> std::string {
    if (!r.metrics) return "-";
    const auto& m = *r.metrics;
    return std::to_string(which == 0 ? m.clause_count : which == 1 ? m.operator_count
                                                                   : m.event_count);
  };
  for (const auto& r : rows) {
    ordered_json j = {{"item", r.item}};
    if (!r.error.empty()) {
      j["error"] = r.error;
      tsv += r.item + "\terror\t\t\t\n";
      md += "| " + r.item + " | error | | | |\n";
      items.push_back(j);
      continue;
    }
    ++measured;
    sums[3] += static_cast<double>(r.chars);
    if (r.metrics) {
      ++props;
      sums[0] += r.metrics->clause_count;
      sums[1] += r.metrics->operator_count;
      sums[2] += r.metrics->event_count;
      j["clauses"] = r.metrics->clause_count;
      j["operators"] = r.metrics->operator_count;
      j["events"] = r.metrics->event_count;
    }
    j["chars"] = r.chars;
    items.push_back(j);
    const std::string line = cell(r, 0) + "\t" + cell(r, 1) + "\t" + cell(r, 2) + "\t" +
                             std::to_string(r.chars);
    tsv += r.item + "\t" + line + "\n";
    md += "| " + r.item + " | " + cell(r, 0) + " | " + cell(r, 1) + " | " + cell(r, 2) +
          " | " + std::to_string(r.chars) + " |\n";
  }
  ordered_json means = ordered_json::object();
  std::string mean_cells[4] = {"-", "-", "-", "-"};
  if (props > 0) {
    const char* keys[3] = {"clauses", "operators", "events"};
    for (int i = 0; i < 3; ++i) {
      means[keys[i]] = sums[i] / props;
      mean_cells[i] = FormatMean(sums[i] / props);
    }
  }
  if (measured > 0) {
    means["chars"] = sums[3] / measured;
    mean_cells[3] = FormatMean(sums[3] / measured);
  }
  tsv += "mean\t" + mean_cells[0] + "\t" + mean_cells[1] + "\t" + mean_cells[2] + "\t" +
         mean_cells[3] + "\n";
  md += "| mean | " + mean_cells[0] + " | " + mean_cells[1] + " | " + mean_cells[2] + " | " +
        mean_cells[3] + " |\n";

  CommandResult r;
  r.exit_code = measured == static_cast<int>(rows.size()) ? 0 : 1;
  r.json = {{"items", items}, {"means", means}};
  r.text = options.markdown ? md : tsv;
  return r;
}

CommandResult RunSimulate(const SimulateOptions& options) {
  if (!options.property && !options.export_captures) {
    throw Error(ErrorCode::kInvalidArgument, "give --property and/or --export-captures");
  }
  const auto model = simulator::LoadAppModel(options.model);
  CommandResult r;
  r.json = ordered_json::object();
  if (options.export_captures) {
    simulator::WriteCaptureDirectories(model, *options.export_captures);
    r.json["exported"] = model.screens.size();
    r.text += "exported " + std::to_string(model.screens.size()) + " captures to " +
              options.export_captures->string() + "\n";
  }
  if (options.property) {
    const auto ast = propdsl::ParseProperty(ReadFile(*options.property));
    const auto run = simulator::ExecuteProperty(model, ast);
    ordered_json events = ordered_json::array();
    for (const auto& e : run.trace.events) {
      events.push_back({{"action", propdsl::ActionName(e.action)},
                        {"widget", e.widget},
                        {"screen_before", e.screen_before},
                        {"screen_after", e.screen_after}});
      r.text += std::string(propdsl::ActionName(e.action)) + " " + e.widget + ": " +
                e.screen_before + " -> " + e.screen_after + "\n";
    }
    ordered_json asserts = ordered_json::array();
    for (const auto& a : run.trace.assertion_results) {
      asserts.push_back({{"expr", a.expr}, {"value", a.value}});
      r.text += std::string(a.value ? "holds  " : "fails  ") + a.expr + "\n";
    }
    const std::string verdict(simulator::VerdictName(run.verdict.kind));
    r.json["verdict"] = verdict;
    if (!run.verdict.message.empty()) r.json["message"] = run.verdict.message;
    r.json["events"] = events;
    r.json["assertions"] = asserts;
    r.json["clock_ms"] = run.trace.clock_ms;
    r.text += "verdict: " + verdict;
    if (!run.verdict.message.empty()) r.text += " (" + run.verdict.message + ")";
    r.text += "\n";
    if (run.verdict.kind == simulator::VerdictKind::kExecutionError) r.exit_code = 1;
  }
  return r;
}

}  // namespace propforge::cli
