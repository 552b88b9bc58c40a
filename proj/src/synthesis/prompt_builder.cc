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

#include "propforge/synthesis/prompt_builder.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/text.h"
#include "propforge/propdsl/parser.h"
#include "propforge/synthesis/phrase_match.h"

namespace propforge::synthesis {

using nlohmann::json;

namespace {

constexpr double kAlwaysIncludeScore = 0.5;

constexpr char kRole[] =
    "You are an expert in Android app testing, and your role is to write "
    "executable properties for Android apps in the PropForge property "
    "language.";

constexpr char kApisHeader[] =
    "The following APIs are available for writing property:\n";

constexpr char kContextHeader[] =
    "The app's UI widget identifiers are detailed below for reference, "
    "ensuring accurate element selection in tests:\n";

constexpr char kEmptyContextNote[] =
    "Note: no widget context is available for this app. Derive widget "
    "identifiers from the property description alone.\n";

constexpr char kDemosHeader[] =
    "Here are the two example test snippets that you might write, based on "
    "the given property descriptions:\n";

constexpr char kTaskHeader[] =
    "Your task: Using the available APIs, UI widget identifiers and following "
    "the example format, please write a test snippet for the following "
    "property:\n";

constexpr char kConstraints[] =
    "Respond only with the property code, strictly adhering to the given "
    "property description. Do not include any explanations, comments, or "
    "text outside the code block.";

std::string Nullable(const std::optional<std::string>& v) {
  return json(v.value_or("null")).dump();
}

std::string EnsureNewline(std::string s) {
  if (!s.empty() && s.back() != '\n') s += '\n';
  return s;
}

}  // namespace

std::vector<SynthesisDemo> LoadSynthesisDemos(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      const std::string fname = e.path().filename().string();
      if (fname.size() > 10 && fname.ends_with(".demo.json")) {
        files.push_back(e.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<SynthesisDemo> demos;
  for (const auto& f : files) {
    const json doc = json::parse(ReadFile(f), nullptr, false);
    if (!doc.is_object() || !doc.contains("description") ||
        !doc.contains("property") || !doc["description"].is_string() ||
        !doc["property"].is_string()) {
      throw Error(ErrorCode::kMissingDemos,
                  f.string() + " needs string fields description and property");
    }
    SynthesisDemo d{f.filename().string(), doc["description"], doc["property"]};
    d.name = d.name.substr(0, d.name.size() - std::string(".demo.json").size());
    propdsl::ParseProperty(d.property);
    demos.push_back(std::move(d));
  }
  return demos;
}

std::vector<grounding::EnrichedWidget> SelectContextSubset(
    const PropertyDescription& desc, const grounding::WidgetContextStore& store,
    std::size_t budget) {
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "context budget must be at least 1");
  }
  const auto lines = DescriptionLines(desc);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < store.widgets.size(); ++i) {
    double best = 0.0;
    for (const auto& line : lines) {
      best = std::max(best, PhraseScore(line, store.widgets[i]));
    }
    ranked.emplace_back(best, i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<grounding::EnrichedWidget> out;
  for (const auto& [score, index] : ranked) {
    if (out.size() >= budget && score < kAlwaysIncludeScore) break;
    out.push_back(store.widgets[index]);
  }
  return out;
}

std::string RenderContextEntry(const grounding::EnrichedWidget& w) {
  const auto& a = w.attributes;
  const std::string label =
      w.annotation ? json(w.annotation->semantic_label).dump() : "\"null\"";
  const std::string func =
      w.annotation ? json(w.annotation->functionality).dump() : "\"null\"";
  return "{\"text\": " + Nullable(a.text) +
         ", \"resource_id\": " + Nullable(a.resource_id) +
         ", \"description\": " + Nullable(a.content_description) +
         ", \"class\": " + json(a.class_name).dump() +
         ", \"semantic label\": " + label + ", \"functionality\": " + func + "}";
}

PromptBundle BuildSynthesisPrompt(
    const PropertyDescription& desc,
    const std::vector<grounding::EnrichedWidget>& context,
    const std::string& api_catalog, const std::vector<SynthesisDemo>& demos) {
  if (demos.size() != 2) {
    throw Error(ErrorCode::kMissingDemos,
                "synthesis prompt needs exactly 2 demonstrations, got " +
                    std::to_string(demos.size()));
  }

  std::string context_text = kContextHeader;
  if (context.empty()) {
    context_text += "[]\n";
    context_text += kEmptyContextNote;
  } else {
    context_text += "[\n";
    for (std::size_t i = 0; i < context.size(); ++i) {
      context_text += "  " + RenderContextEntry(context[i]);
      context_text += i + 1 < context.size() ? ",\n" : "\n";
    }
    context_text += "]\n";
  }

  std::string demo_text = kDemosHeader;
  for (std::size_t i = 0; i < demos.size(); ++i) {
    const std::string n = std::to_string(i + 1);
    demo_text += "\nExample " + n + " property description:\n" +
                 EnsureNewline(std::string(Trim(demos[i].description))) +
                 "Example " + n + " executable property:\n" +
                 EnsureNewline(std::string(Trim(demos[i].property)));
  }

  PromptBundle bundle;
  bundle.messages = {
      {"system", kRole, {}, 1, "role"},
      {"user", kApisHeader + EnsureNewline(api_catalog), {}, 2, "framework_apis"},
      {"user", context_text, {}, 3, "widget_context"},
      {"user", demo_text, {}, 4, "demonstrations"},
      {"user", kTaskHeader + FormatDescription(desc), {}, 5, "property_description"},
      {"user", kConstraints, {}, 6, "constraints"},
  };
  for (std::size_t i = 0; i < bundle.component_map.size(); ++i) {
    bundle.component_map[i] = i;
  }
  return bundle;
}

}  // namespace propforge::synthesis
