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

#ifndef PROPFORGE_PROPDSL_VALIDATOR_H_
#define PROPFORGE_PROPDSL_VALIDATOR_H_

#include <string>
#include <vector>

#include "propforge/grounding/context_store.h"
#include "propforge/propdsl/ast.h"

namespace propforge::propdsl {

enum class Severity { kError, kWarning };

// Diagnostic codes.
inline constexpr char kUnboundVar[] = "unbound-var";
inline constexpr char kTypeMismatch[] = "type-mismatch";
inline constexpr char kUnknownAction[] = "unknown-action";
inline constexpr char kBadArgument[] = "bad-argument";
inline constexpr char kMalformedNode[] = "malformed-node";
inline constexpr char kNoEvents[] = "no-events";
inline constexpr char kUngrounded[] = "ungrounded-selector";

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  SourcePos pos;
  // For ungrounded selectors: the selector of the best-matching store widget.
  std::string suggestion;
};

// Static checks: variable scoping (bindings made inside an if branch do not
// escape it), the string/bool type discipline, action arity and argument
// ranges, and at least one action in the interaction. With a store, every
// selector that resolves to no store widget yields a warning.
std::vector<Diagnostic> Validate(
    const PropertyAST& ast, const grounding::WidgetContextStore* store = nullptr);

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// "error 3:7 [unbound-var] variable 'x' is not bound"
std::string FormatDiagnostic(const Diagnostic& d);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_VALIDATOR_H_
