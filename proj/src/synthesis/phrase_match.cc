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

#include "propforge/synthesis/phrase_match.h"

#include <algorithm>
#include <set>

#include "propforge/common/text.h"
#include "propforge/grounding/annotation.h"

namespace propforge::synthesis {
namespace {

const std::set<std::string>& StopWords() {
  static const std::set<std::string> kWords = {
      "a",     "an",   "the",   "of",   "all",   "any",       "is",
      "are",   "be",   "it",    "its",  "to",    "into",      "in",
      "on",    "and",  "that",  "which", "exist", "exists",   "shown",
      "displayed", "visible", "present", "with", "for", "from", "this"};
  return kWords;
}

std::string Singular(const std::string& t) {
  if (t.size() > 3 && t.back() == 's' && t[t.size() - 2] != 's') {
    return t.substr(0, t.size() - 1);
  }
  return t;
}

}  // namespace

std::vector<std::string> ContentTokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (auto& t : WordTokens(phrase)) {
    if (StopWords().count(t) == 0) out.push_back(std::move(t));
  }
  return out;
}

double PhraseScore(std::string_view phrase, const grounding::EnrichedWidget& w) {
  const auto tokens = ContentTokens(phrase);
  if (tokens.empty()) return 0.0;
  std::vector<std::string> singular;
  for (const auto& t : tokens) singular.push_back(Singular(t));
  double score = std::max(grounding::ScoreWidget(tokens, w),
                          grounding::ScoreWidget(singular, w));
  // Heuristic labels of list rows are their contents, so "note titles" would
  // otherwise lose to any button that mentions "note". A phrase that spells
  // out the resource id exactly names that widget family.
  if (w.attributes.resource_id) {
    const auto id = WordTokens(grounding::HumanizeResourceId(*w.attributes.resource_id));
    const std::set<std::string> id_set(id.begin(), id.end());
    if (!id_set.empty() && std::set<std::string>(singular.begin(), singular.end()) == id_set) {
      score = std::max(score, kIdNameScore);
    }
  }
  return score;
}

std::vector<grounding::MatchCandidate> RankWidgets(
    std::string_view phrase, const grounding::WidgetContextStore& store) {
  std::vector<grounding::MatchCandidate> out;
  for (const auto& w : store.widgets) {
    const double s = PhraseScore(phrase, w);
    if (s > 0.0) out.push_back({w.uid, s, w.attributes.node_index});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  return out;
}

}  // namespace propforge::synthesis
