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

#ifndef PROPFORGE_SYNTHESIS_PROMPT_BUILDER_H_
#define PROPFORGE_SYNTHESIS_PROMPT_BUILDER_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "propforge/grounding/context_store.h"
#include "propforge/llm/prompt.h"
#include "propforge/synthesis/description.h"

namespace propforge::synthesis {

inline constexpr std::size_t kDefaultContextBudget = 60;
inline constexpr int kPromptComponents = 6;

struct SynthesisDemo {
  std::string name;
  std::string description;  // structured description text
  std::string property;     // the matching property source

  bool operator==(const SynthesisDemo&) const = default;
};

// Loads every *.demo.json in `dir`, sorted by file name. Each demo property
// must parse; a broken demo throws ParseError.
std::vector<SynthesisDemo> LoadSynthesisDemos(const std::filesystem::path& dir);

// Ranks widgets by their best score against any description line and keeps
// the top `budget`, widened to include every widget scoring at least 0.5.
std::vector<grounding::EnrichedWidget> SelectContextSubset(
    const PropertyDescription& desc, const grounding::WidgetContextStore& store,
    std::size_t budget = kDefaultContextBudget);

// One context entry: raw attributes plus the semantic label and
// functionality, as a single-line JSON object.
std::string RenderContextEntry(const grounding::EnrichedWidget& w);

struct PromptBundle {
  llm::PromptMessages messages;
  // component_map[i] is the message index carrying component i + 1.
  std::array<std::size_t, kPromptComponents> component_map{};

  bool operator==(const PromptBundle&) const = default;
};

// Components in order: role, framework APIs, widget context, demonstrations,
// property description, constraints. Throws MissingDemos unless exactly two
// demos are given.
PromptBundle BuildSynthesisPrompt(const PropertyDescription& desc,
                                  const std::vector<grounding::EnrichedWidget>& context,
                                  const std::string& api_catalog,
                                  const std::vector<SynthesisDemo>& demos);

}  // namespace propforge::synthesis

#endif  // PROPFORGE_SYNTHESIS_PROMPT_BUILDER_H_
