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

#include "propforge/robustness/selection.h"

#include <cctype>
#include <limits>

#include "propforge/common/error.h"
#include "propforge/common/parallel.h"
#include "propforge/common/text.h"

namespace propforge::robustness {

std::vector<std::string> ParaphrasePool::Texts() const {
  std::vector<std::string> out;
  for (const auto& c : candidates) out.push_back(c.text);
  return out;
}

SelectionResult GreedySelect(const ParaphrasePool& pool, int k, const BleuConfig& cfg,
                             std::size_t threads) {
  const std::size_t n = pool.candidates.size();
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::kPoolTooSmall, "cannot select " + std::to_string(k) +
                                              " from a pool of " + std::to_string(n));
  }
  const auto texts = pool.Texts();
  std::vector<double> b(n * n, 0.0);
  ParallelFor(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) b[i * n + j] = Bleu(texts[i], texts[j], cfg);
    }
  });

  SelectionResult r;
  r.k = k;
  double best = std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = (b[i * n + j] + b[j * n + i]) / 2.0;
      if (s < best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }
  std::vector<bool> used(n, false);
  for (std::size_t idx : {bi, bj}) {
    used[idx] = true;
    r.indices.push_back(idx);
    r.steps.push_back({idx, texts[idx], best});
  }

  while (r.indices.size() < static_cast<std::size_t>(k)) {
    double low = std::numeric_limits<double>::infinity();
    std::size_t pick = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      // Same arithmetic as SelfBleu so logged scores agree bit for bit.
      double sum = 0.0;
      for (std::size_t s : r.indices) sum += (b[c * n + s] + b[s * n + c]) / 2.0;
      const double score = sum / static_cast<double>(r.indices.size());
      if (score < low) {
        low = score;
        pick = c;
      }
    }
    used[pick] = true;
    r.indices.push_back(pick);
    r.steps.push_back({pick, texts[pick], low});
  }
  for (std::size_t idx : r.indices) r.selected.push_back(texts[idx]);
  r.objective = AvgPairwiseBleu(r.selected, cfg);
  return r;
}

std::vector<std::string> ParseNumberedList(const std::string& reply) {
  std::vector<std::string> out;
  for (const auto& raw : SplitLines(reply)) {
    std::string_view line = Trim(raw);
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == 0 || i >= line.size() || (line[i] != '.' && line[i] != ')')) continue;
    std::string_view item = Trim(line.substr(i + 1));
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
      item = Trim(item.substr(1, item.size() - 2));
    }
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

llm::PromptMessages BuildParaphrasePrompt(const std::string& prompt_template,
                                          const std::string& description,
                                          int per_call, int call, int calls) {
  const std::pair<std::string, std::string> subs[] = {
      {"{description}", std::string(Trim(description))},
      {"{count}", std::to_string(per_call)},
      {"{call}", std::to_string(call)},
      {"{calls}", std::to_string(calls)},
  };
  std::string text;
  for (std::size_t i = 0; i < prompt_template.size();) {
    bool replaced = false;
    for (const auto& [key, value] : subs) {
      if (prompt_template.compare(i, key.size(), key) == 0) {
        text += value;
        i += key.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) text += prompt_template[i++];
  }
  return {{"user", text, {}, 0, ""}};
}

ParaphrasePool GenerateParaphrases(llm::ChatProvider& provider,
                                   const std::string& prompt_template,
                                   const std::string& description, int calls,
                                   int per_call) {
  if (calls < 1 || per_call < 1) {
    throw Error(ErrorCode::kInvalidArgument, "calls and per_call must be >= 1");
  }
  ParaphrasePool pool;
  pool.original = std::string(Trim(description));
  for (int call = 0; call < calls; ++call) {
    const auto prompt =
        BuildParaphrasePrompt(prompt_template, description, per_call, call + 1, calls);
    auto items = ParseNumberedList(provider.Complete({provider.model(), 0.0, prompt}));
    if (items.empty()) {
      throw Error(ErrorCode::kUnparseableList,
                  "call " + std::to_string(call + 1) + " returned no numbered items");
    }
    if (items.size() < static_cast<std::size_t>(per_call)) {
      pool.warnings.push_back("call " + std::to_string(call + 1) + " returned " +
                              std::to_string(items.size()) + " of " +
                              std::to_string(per_call) + " paraphrases");
    }
    if (items.size() > static_cast<std::size_t>(per_call)) items.resize(per_call);
    for (std::size_t i = 0; i < items.size(); ++i) {
      pool.candidates.push_back({items[i], call, static_cast<int>(i)});
    }
  }
  return pool;
}

nlohmann::ordered_json PoolToJson(const ParaphrasePool& pool) {
  nlohmann::ordered_json cands = nlohmann::ordered_json::array();
  for (const auto& c : pool.candidates) {
    cands.push_back({{"text", c.text}, {"call", c.call}, {"item", c.item}});
  }
  nlohmann::ordered_json doc = {{"original", pool.original}, {"candidates", cands}};
  if (!pool.warnings.empty()) doc["warnings"] = pool.warnings;
  return doc;
}

ParaphrasePool PoolFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("candidates") || !doc["candidates"].is_array()) {
    throw Error(ErrorCode::kSchemaError, "paraphrase pool needs a candidates array");
  }
  ParaphrasePool pool;
  try {
    pool.original = doc.value("original", std::string());
    for (const auto& c : doc["candidates"]) {
      if (!c.is_object() || !c.contains("text") || !c["text"].is_string()) {
        throw Error(ErrorCode::kSchemaError, "every candidate needs a text string");
      }
      pool.candidates.push_back({c["text"], c.value("call", 0), c.value("item", 0)});
    }
    if (doc.contains("warnings")) {
      pool.warnings = doc["warnings"].get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("malformed paraphrase pool: ") + e.what());
  }
  return pool;
}

nlohmann::ordered_json SelectionToJson(const SelectionResult& s) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& st : s.steps) {
    steps.push_back({{"index", st.index}, {"text", st.text}, {"score", st.score}});
  }
  return {{"k", s.k},
          {"selected", s.selected},
          {"objective", s.objective},
          {"steps", steps}};
}

}  // namespace propforge::robustness
