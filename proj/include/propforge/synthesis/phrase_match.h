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

// Ranks store widgets against a free-text widget mention such as
// "the search button" or "the names of all items".
#ifndef PROPFORGE_SYNTHESIS_PHRASE_MATCH_H_
#define PROPFORGE_SYNTHESIS_PHRASE_MATCH_H_

#include <string>
#include <string_view>
#include <vector>

#include "propforge/grounding/context_store.h"
#include "propforge/grounding/matcher.h"

namespace propforge::synthesis {

// Floor for a phrase whose content words are exactly a widget's humanized
// resource id.
inline constexpr double kIdNameScore = 0.6;

// Lowercased word tokens with function words removed.
std::vector<std::string> ContentTokens(std::string_view phrase);

// Best match score over the raw tokens and their singular forms, so "items"
// still meets a widget annotated "list item". Raised to kIdNameScore when
// the phrase spells out the resource id.
double PhraseScore(std::string_view phrase, const grounding::EnrichedWidget& w);

// Widgets with a positive score, best first; ties keep store order.
std::vector<grounding::MatchCandidate> RankWidgets(
    std::string_view phrase, const grounding::WidgetContextStore& store);

}  // namespace propforge::synthesis

#endif  // PROPFORGE_SYNTHESIS_PHRASE_MATCH_H_
