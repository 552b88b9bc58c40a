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

// Sentence-level BLEU and the diversity measures built on it.
#ifndef PROPFORGE_ROBUSTNESS_BLEU_H_
#define PROPFORGE_ROBUSTNESS_BLEU_H_

#include <string>
#include <string_view>
#include <vector>

namespace propforge::robustness {

struct BleuConfig {
  int max_n = 4;  // n-gram orders 1..max_n, uniformly weighted
};

// Lowercase; any character that is not a letter, digit or non-ASCII byte
// separates tokens and is dropped.
std::vector<std::string> BleuTokens(std::string_view text);

// Geometric mean of clipped n-gram precisions times the brevity penalty
// min(1, exp(1 - r/h)). A zero count for n >= 2 is smoothed to
// 1 / (candidates + 1); unigrams are never smoothed, so token-disjoint texts
// score 0. An empty hypothesis scores 0.
double Bleu(std::string_view hypothesis, std::string_view reference,
            const BleuConfig& cfg = {});

// Mean BLEU over all ordered pairs of distinct positions. Throws TooFew for
// fewer than two texts.
double AvgPairwiseBleu(const std::vector<std::string>& texts,
                       const BleuConfig& cfg = {});

// Mean over s in `set` of (Bleu(c, s) + Bleu(s, c)) / 2. Throws EmptySet.
double SelfBleu(std::string_view candidate, const std::vector<std::string>& set,
                const BleuConfig& cfg = {});

}  // namespace propforge::robustness

#endif  // PROPFORGE_ROBUSTNESS_BLEU_H_
