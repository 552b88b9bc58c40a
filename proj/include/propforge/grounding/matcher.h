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

// Grounding natural-language widget phrases and identifier selectors against
// a context store.

#ifndef PROPFORGE_GROUNDING_MATCHER_H_
#define PROPFORGE_GROUNDING_MATCHER_H_

#include <string>
#include <string_view>
#include <vector>

#include "propforge/grounding/context_store.h"
#include "propforge/propdsl/selector.h"

namespace propforge::grounding {

// Per-field weights of the phrase matcher. They sum to 1.
struct MatchWeights {
  static constexpr double kSemanticLabel = 0.30;
  static constexpr double kText = 0.25;
  static constexpr double kFunctionality = 0.20;
  static constexpr double kResourceId = 0.15;
  static constexpr double kContentDescription = 0.10;
};

struct MatchCandidate {
  std::string widget_uid;
  double score = 0.0;
  int node_index = 0;

  bool operator==(const MatchCandidate&) const = default;
};

struct MatchResult {
  std::string query;
  std::vector<MatchCandidate> candidates;  // best first
};

// Score of one widget for a tokenized query. Each field contributes its
// weight times the Dice overlap 2|Q∩F|/(|Q|+|F|) of the distinct query tokens
// and field tokens, so the score lies in [0, 1].
double ScoreWidget(const std::vector<std::string>& query_tokens,
                   const EnrichedWidget& widget);

// Ranks every widget with a positive score, highest first; ties go to the
// lower node_index, then to store order. Throws Error(kEmptyQuery) when the
// query has no tokens.
MatchResult MatchWidget(std::string_view query, const WidgetContextStore& store);

// Uids of the store widgets a selector matches, in store order.
std::vector<std::string> ResolveSelector(const propdsl::Selector& selector,
                                         const WidgetContextStore& store);

// True iff both selectors resolve to the same non-empty widget set.
bool SameWidget(const propdsl::Selector& a, const propdsl::Selector& b,
                const WidgetContextStore& store);

// The shortest selector naming this widget: its id when no two entries with
// that id come from the same capture, else a single id, text or desc clause
// resolving to it alone, else id+text, else every available clause.
propdsl::Selector MostSpecificSelector(const EnrichedWidget& widget,
                                       const WidgetContextStore& store);

}  // namespace propforge::grounding

#endif  // PROPFORGE_GROUNDING_MATCHER_H_
