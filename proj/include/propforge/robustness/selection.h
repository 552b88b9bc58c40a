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

// Paraphrase pools and greedy low-Self-BLEU subset selection.
#ifndef PROPFORGE_ROBUSTNESS_SELECTION_H_
#define PROPFORGE_ROBUSTNESS_SELECTION_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/llm/provider.h"
#include "propforge/robustness/bleu.h"

namespace propforge::robustness {

struct PoolCandidate {
  std::string text;
  int call = 0;  // 0-based provider call that produced it
  int item = 0;  // 0-based position within that call's list

  bool operator==(const PoolCandidate&) const = default;
};

struct ParaphrasePool {
  std::string original;
  std::vector<PoolCandidate> candidates;  // duplicates allowed
  std::vector<std::string> warnings;      // e.g. under-filled responses

  std::vector<std::string> Texts() const;
  bool operator==(const ParaphrasePool&) const = default;
};

struct SelectionStep {
  std::size_t index = 0;  // pool position
  std::string text;
  double score = 0.0;  // pair score for the seed pair, Self-BLEU after

  bool operator==(const SelectionStep&) const = default;
};

struct SelectionResult {
  int k = 0;
  std::vector<std::size_t> indices;
  std::vector<std::string> selected;
  double objective = 0.0;  // AvgPairwiseBleu(selected)
  std::vector<SelectionStep> steps;

  bool operator==(const SelectionResult&) const = default;
};

// Seeds S with the pair minimizing (Bleu(x, y) + Bleu(y, x)) / 2, then adds
// the remaining candidate with the lowest Self-BLEU against S until |S| = k.
// Ties go to the lowest pool index. Throws PoolTooSmall unless
// 2 <= k <= |pool|.
SelectionResult GreedySelect(const ParaphrasePool& pool, int k,
                             const BleuConfig& cfg = {}, std::size_t threads = 1);

// Numbered list items ("1. text", "2) text") from a reply, quotes stripped.
std::vector<std::string> ParseNumberedList(const std::string& reply);

// Placeholders: {description}, {count}, {call}, {calls} (call is 1-based).
llm::PromptMessages BuildParaphrasePrompt(const std::string& prompt_template,
                                          const std::string& description,
                                          int per_call, int call, int calls);

// Calls the provider `calls` times sequentially. Each reply contributes at
// most `per_call` items; a short reply adds a warning and an empty one
// throws UnparseableList.
ParaphrasePool GenerateParaphrases(llm::ChatProvider& provider,
                                   const std::string& prompt_template,
                                   const std::string& description, int calls,
                                   int per_call);

nlohmann::ordered_json PoolToJson(const ParaphrasePool& pool);
ParaphrasePool PoolFromJson(const nlohmann::json& doc);
nlohmann::ordered_json SelectionToJson(const SelectionResult& selection);

}  // namespace propforge::robustness

#endif  // PROPFORGE_ROBUSTNESS_SELECTION_H_
