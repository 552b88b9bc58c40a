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

#include "propforge/synthesis/synthesizer.h"

#include <optional>

#include "propforge/common/error.h"
#include "propforge/common/text.h"
#include "propforge/propdsl/parser.h"

namespace propforge::synthesis {
namespace {

constexpr std::string_view kFence = "```";

struct Attempt {
  std::optional<propdsl::PropertyAST> ast;
  std::vector<propdsl::Diagnostic> warnings;
  std::string problem;
};

Attempt Check(const std::string& response,
              const grounding::WidgetContextStore* store) {
  Attempt a;
  try {
    const std::string code = ExtractCode(response);
    propdsl::PropertyAST ast = propdsl::ParseProperty(code);
    std::vector<std::string> errors;
    for (auto& d : propdsl::Validate(ast, store)) {
      if (d.severity == propdsl::Severity::kError) {
        errors.push_back(propdsl::FormatDiagnostic(d));
      } else {
        a.warnings.push_back(std::move(d));
      }
    }
    if (errors.empty()) {
      a.ast = std::move(ast);
    } else {
      a.problem = Join(errors, "\n");
    }
  } catch (const propdsl::ParseError& e) {
    a.problem = e.what();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyResponse) throw;
    a.problem = e.what();
  }
  return a;
}

}  // namespace

std::string ExtractCode(std::string_view response) {
  const std::size_t open = response.find(kFence);
  std::string_view body = response;
  if (open != std::string_view::npos) {
    // Skip the info string ("```prop") up to the end of the fence line.
    std::size_t start = response.find('\n', open);
    start = start == std::string_view::npos ? response.size() : start + 1;
    const std::size_t close = response.find(kFence, start);
    body = response.substr(
        start, close == std::string_view::npos ? std::string_view::npos
                                               : close - start);
  }
  const std::string_view code = Trim(body);
  if (code.empty()) {
    throw Error(ErrorCode::kEmptyResponse, "response contains no code");
  }
  return std::string(code);
}

std::string RepairRequest(std::string_view diagnostics) {
  return "The property you wrote was rejected:\n" + std::string(diagnostics) +
         "\nFix the problem and respond with the complete corrected property "
         "only.";
}

SynthesisResult Synthesize(llm::ChatProvider& provider, const PromptBundle& bundle,
                           const SynthesisOptions& options) {
  llm::ChatRequest request{provider.model(), 0.0, bundle.messages};
  std::string problem;
  for (int attempt = 0; attempt <= options.repair_budget; ++attempt) {
    const std::string response = provider.Complete(request);
    Attempt a = Check(response, options.store);
    if (a.ast) {
      return {std::move(*a.ast), response, attempt, provider.model(),
              std::move(a.warnings)};
    }
    problem = a.problem;
    request.messages.push_back({"assistant", response, {}, 0, ""});
    request.messages.push_back({"user", RepairRequest(problem), {}, 0, ""});
  }
  throw Error(ErrorCode::kSynthesisFailed,
              "no valid property after " + std::to_string(options.repair_budget) +
                  " repairs; last problem: " + problem);
}

}  // namespace propforge::synthesis
