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

#include "propforge/grounding/matcher.h"

#include <algorithm>
#include <set>

#include "propforge/common/error.h"
#include "propforge/common/text.h"
#include "propforge/grounding/annotation.h"

namespace propforge::grounding {
namespace {

using TokenSet = std::set<std::string>;

TokenSet ToSet(const std::vector<std::string>& tokens) {
  return TokenSet(tokens.begin(), tokens.end());
}

double Dice(const TokenSet& q, const TokenSet& f) {
  if (q.empty() || f.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : q) common += f.count(t);
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(q.size() + f.size());
}

TokenSet FieldTokens(const std::optional<std::string>& v) {
  return v ? ToSet(WordTokens(*v)) : TokenSet{};
}

}  // namespace

double ScoreWidget(const std::vector<std::string>& query_tokens,
                   const EnrichedWidget& widget) {
  const TokenSet q = ToSet(query_tokens);
  const auto& a = widget.attributes;
  double score = 0.0;
  if (widget.annotation) {
    score += MatchWeights::kSemanticLabel *
             Dice(q, ToSet(WordTokens(widget.annotation->semantic_label)));
    score += MatchWeights::kFunctionality *
             Dice(q, ToSet(WordTokens(widget.annotation->functionality)));
  }
  score += MatchWeights::kText * Dice(q, FieldTokens(a.text));
  if (a.resource_id) {
    score += MatchWeights::kResourceId *
             Dice(q, ToSet(WordTokens(HumanizeResourceId(*a.resource_id))));
  }
  score += MatchWeights::kContentDescription *
           Dice(q, FieldTokens(a.content_description));
  return std::clamp(score, 0.0, 1.0);
}

MatchResult MatchWidget(std::string_view query, const WidgetContextStore& store) {
  const auto tokens = WordTokens(query);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyQuery, "match query has no words");
  }
  MatchResult result;
  result.query = std::string(query);
  for (const auto& w : store.widgets) {
    const double s = ScoreWidget(tokens, w);
    if (s > 0.0) result.candidates.push_back({w.uid, s, w.attributes.node_index});
  }
  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const MatchCandidate& x, const MatchCandidate& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.node_index < y.node_index;
                   });
  return result;
}

std::vector<std::string> ResolveSelector(const propdsl::Selector& selector,
                                         const WidgetContextStore& store) {
  std::vector<std::string> uids;
  for (const auto& w : store.widgets) {
    if (propdsl::SelectorMatches(selector, propdsl::ViewOf(w.attributes))) {
      uids.push_back(w.uid);
    }
  }
  return uids;
}

bool SameWidget(const propdsl::Selector& a, const propdsl::Selector& b,
                const WidgetContextStore& store) {
  const auto ra = ResolveSelector(a, store);
  return !ra.empty() && ra == ResolveSelector(b, store);
}

propdsl::Selector MostSpecificSelector(const EnrichedWidget& widget,
                                       const WidgetContextStore& store) {
  using propdsl::Field;
  const auto& a = widget.attributes;
  std::vector<propdsl::SelectorClause> available;
  if (a.resource_id) available.push_back({Field::kId, *a.resource_id});
  if (a.text) available.push_back({Field::kText, *a.text});
  if (a.content_description) {
    available.push_back({Field::kDesc, *a.content_description});
  }
  const std::vector<std::string> target = {widget.uid};
  if (a.resource_id) {
    // Entries sharing an id but never a capture are one widget seen in
    // different states (say, a label whose text changes), so the id still
    // names it and is more stable than the text.
    propdsl::Selector s{{available[0]}, propdsl::MatchMode::kExact, {}};
    std::set<std::string> captures;
    bool one_per_capture = true;
    for (const auto& uid : ResolveSelector(s, store)) {
      one_per_capture = one_per_capture && captures.insert(store.Find(uid)->source_capture).second;
    }
    if (one_per_capture && !captures.empty()) return s;
  }
  for (const auto& clause : available) {
    propdsl::Selector s{{clause}, propdsl::MatchMode::kExact, {}};
    if (ResolveSelector(s, store) == target) return s;
  }
  if (a.resource_id && a.text) {
    propdsl::Selector s{{available[0], available[1]}, propdsl::MatchMode::kExact, {}};
    if (ResolveSelector(s, store) == target) return s;
  }
  available.push_back({Field::kClass, a.class_name});
  return propdsl::Selector{available, propdsl::MatchMode::kExact, {}};
}

}  // namespace propforge::grounding
