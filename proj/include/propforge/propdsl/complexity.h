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

#ifndef PROPFORGE_PROPDSL_COMPLEXITY_H_
#define PROPFORGE_PROPDSL_COMPLEXITY_H_

#include <cstdint>
#include <string_view>

#include "propforge/propdsl/ast.h"

namespace propforge::propdsl {

struct ComplexityMetrics {
  int clause_count = 0;    // atomic boolean terms in pre and post
  int operator_count = 0;  // and/or/not occurrences in pre and post
  int event_count = 0;     // actions, every branch counted
  int char_count = 0;      // scalars in the canonical printed form

  bool operator==(const ComplexityMetrics&) const = default;
};

// An n-ary and/or counts as n-1 operators, the number of keywords a reader
// sees in the source; `not` counts 1.
ComplexityMetrics Complexity(const PropertyAST& ast);

// Unicode scalar count of `text`.
std::int64_t CharComplexity(std::string_view text);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_COMPLEXITY_H_
