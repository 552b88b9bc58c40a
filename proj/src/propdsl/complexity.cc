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

#include "propforge/propdsl/complexity.h"

#include "propforge/common/text.h"
#include "propforge/propdsl/printer.h"

namespace propforge::propdsl {
namespace {

void CountCondition(const Expr& e, ComplexityMetrics& m) {
  switch (e.kind) {
    case ExprKind::kNot:
      m.operator_count += 1;
      break;
    case ExprKind::kAnd:
    case ExprKind::kOr:
      m.operator_count += static_cast<int>(e.args.size()) - 1;
      break;
    case ExprKind::kBool:
    case ExprKind::kExists:
    case ExprKind::kContains:
    case ExprKind::kStartsWith:
    case ExprKind::kEquals:
      m.clause_count += 1;
      return;
    default:
      return;
  }
  for (const auto& a : e.args) CountCondition(a, m);
}

int CountEvents(const std::vector<Stmt>& body) {
  int n = 0;
  for (const auto& s : body) {
    if (std::holds_alternative<Do>(s.node)) {
      ++n;
    } else if (const auto* branch = std::get_if<If>(&s.node)) {
      n += CountEvents(branch->then_body);
      if (branch->else_body) n += CountEvents(*branch->else_body);
    }
  }
  return n;
}

}  // namespace

ComplexityMetrics Complexity(const PropertyAST& ast) {
  ComplexityMetrics m;
  CountCondition(ast.precondition, m);
  for (const auto& q : ast.postcondition) CountCondition(q, m);
  m.event_count = CountEvents(ast.interaction);
  m.char_count = static_cast<int>(CountScalars(PrintProperty(ast)));
  return m;
}

std::int64_t CharComplexity(std::string_view text) {
  return static_cast<std::int64_t>(CountScalars(text));
}

}  // namespace propforge::propdsl
