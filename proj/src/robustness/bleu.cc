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

#include "propforge/robustness/bleu.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "propforge/common/error.h"

namespace propforge::robustness {
namespace {

using NGramCounts = std::map<std::vector<std::string>, int>;

NGramCounts Count(const std::vector<std::string>& tokens, std::size_t n) {
  NGramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

std::vector<std::string> BleuTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double Bleu(std::string_view hypothesis, std::string_view reference,
            const BleuConfig& cfg) {
  if (cfg.max_n < 1) throw Error(ErrorCode::kInvalidArgument, "max_n must be >= 1");
  const auto hyp = BleuTokens(hypothesis);
  const auto ref = BleuTokens(reference);
  if (hyp.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= cfg.max_n; ++n) {
    const auto h = Count(hyp, n);
    const auto r = Count(ref, n);
    long matches = 0;
    long total = 0;
    for (const auto& [gram, c] : h) {
      total += c;
      const auto it = r.find(gram);
      if (it != r.end()) matches += std::min(c, it->second);
    }
    double p;
    if (matches > 0) {
      p = static_cast<double>(matches) / static_cast<double>(total);
    } else if (n == 1) {
      return 0.0;
    } else {
      p = 1.0 / static_cast<double>(total + 1);
    }
    log_sum += std::log(p) / cfg.max_n;
  }
  const double h_len = static_cast<double>(hyp.size());
  const double r_len = static_cast<double>(ref.size());
  const double bp = std::min(1.0, std::exp(1.0 - r_len / h_len));
  return std::clamp(bp * std::exp(log_sum), 0.0, 1.0);
}

double AvgPairwiseBleu(const std::vector<std::string>& texts, const BleuConfig& cfg) {
  if (texts.size() < 2) {
    throw Error(ErrorCode::kTooFew, "average pairwise BLEU needs at least 2 texts");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    for (std::size_t j = 0; j < texts.size(); ++j) {
      if (i != j) sum += Bleu(texts[i], texts[j], cfg);
    }
  }
  const double n = static_cast<double>(texts.size());
  return sum / (n * (n - 1.0));
}

double SelfBleu(std::string_view candidate, const std::vector<std::string>& set,
                const BleuConfig& cfg) {
  if (set.empty()) throw Error(ErrorCode::kEmptySet, "Self-BLEU needs a non-empty set");
  double sum = 0.0;
  for (const auto& s : set) {
    sum += (Bleu(candidate, s, cfg) + Bleu(s, candidate, cfg)) / 2.0;
  }
  return sum / static_cast<double>(set.size());
}

}  // namespace propforge::robustness
