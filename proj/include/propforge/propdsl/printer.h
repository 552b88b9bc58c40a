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

#ifndef PROPFORGE_PROPDSL_PRINTER_H_
#define PROPFORGE_PROPDSL_PRINTER_H_

#include <string>

#include "propforge/propdsl/ast.h"

namespace propforge::propdsl {

// Canonical source text. Two-space indentation, one statement per line, and
// only the parentheses needed to keep nested and/or groups apart, so that
// ParseProperty(PrintProperty(ast)) == ast.
std::string PrintProperty(const PropertyAST& ast);

std::string PrintExpr(const Expr& expr);
std::string PrintTarget(const Target& target);
std::string PrintAction(const Action& action);

// Whether `child` must be parenthesized when it appears directly under a
// node of kind `parent`.
bool NeedsParens(ExprKind parent, const Expr& child);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_PRINTER_H_
