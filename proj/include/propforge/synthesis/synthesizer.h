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

#ifndef PROPFORGE_SYNTHESIS_SYNTHESIZER_H_
#define PROPFORGE_SYNTHESIS_SYNTHESIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "propforge/grounding/context_store.h"
#include "propforge/llm/provider.h"
#include "propforge/propdsl/ast.h"
#include "propforge/propdsl/validator.h"
#include "propforge/synthesis/prompt_builder.h"

namespace propforge::synthesis {

inline constexpr int kDefaultRepairBudget = 2;

// The interior of the first fenced block, or the whole trimmed response when
// there is no fence. Throws EmptyResponse if nothing remains.
std::string ExtractCode(std::string_view response);

struct SynthesisOptions {
  int repair_budget = kDefaultRepairBudget;
  // When set, validation also reports ungrounded selectors as warnings.
  const grounding::WidgetContextStore* store = nullptr;
};

struct SynthesisResult {
  propdsl::PropertyAST ast;
  std::string raw_response;
  int retries_used = 0;
  std::string provider_model;
  std::vector<propdsl::Diagnostic> warnings;
};

// Text of the user turn that asks for a corrected property.
std::string RepairRequest(std::string_view diagnostics);

// Sends the bundle at temperature 0, then extracts, parses and validates the
// reply. Each rejected reply is answered with a repair turn carrying the
// diagnostics, up to `repair_budget` times; after that SynthesisFailed is
// thrown. Provider failures propagate unchanged.
SynthesisResult Synthesize(llm::ChatProvider& provider, const PromptBundle& bundle,
                           const SynthesisOptions& options = {});

}  // namespace propforge::synthesis

#endif  // PROPFORGE_SYNTHESIS_SYNTHESIZER_H_
