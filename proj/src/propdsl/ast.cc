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

#include "propforge/propdsl/ast.h"

#include <array>
#include <utility>

namespace propforge::propdsl {

Expr Expr::String(std::string s) {
  Expr e;
  e.kind = ExprKind::kString;
  e.value = std::move(s);
  return e;
}

Expr Expr::Number(std::string spelling) {
  Expr e;
  e.kind = ExprKind::kNumber;
  e.value = std::move(spelling);
  return e;
}

Expr Expr::Bool(bool b) {
  Expr e;
  e.kind = ExprKind::kBool;
  e.flag = b;
  return e;
}

Expr Expr::Var(std::string name) {
  Expr e;
  e.kind = ExprKind::kVar;
  e.value = std::move(name);
  return e;
}

Expr Expr::Attr(Target target, Field field) {
  Expr e;
  e.kind = ExprKind::kAttr;
  e.target = std::move(target);
  e.field = field;
  return e;
}

Expr Expr::Exists(Target target) {
  Expr e;
  e.kind = ExprKind::kExists;
  e.target = std::move(target);
  return e;
}

Expr Expr::Call(ExprKind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::Not(Expr operand) {
  Expr e;
  e.kind = ExprKind::kNot;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::Logical(ExprKind kind, std::vector<Expr> operands) {
  Expr e;
  e.kind = kind;
  e.args = std::move(operands);
  return e;
}

bool IsLogical(ExprKind kind) {
  return kind == ExprKind::kNot || kind == ExprKind::kAnd ||
         kind == ExprKind::kOr;
}

bool IsPredicate(ExprKind kind) {
  return kind == ExprKind::kContains || kind == ExprKind::kStartsWith ||
         kind == ExprKind::kEquals;
}

std::string_view ExprKindName(ExprKind kind) {
  switch (kind) {
    case ExprKind::kString: return "string";
    case ExprKind::kNumber: return "number";
    case ExprKind::kBool: return "bool";
    case ExprKind::kVar: return "var";
    case ExprKind::kAttr: return "attr";
    case ExprKind::kExists: return "exists";
    case ExprKind::kContains: return "contains";
    case ExprKind::kStartsWith: return "startswith";
    case ExprKind::kEquals: return "equals";
    case ExprKind::kNot: return "not";
    case ExprKind::kAnd: return "and";
    case ExprKind::kOr: return "or";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<ActionKind, std::string_view>, 5> kActions = {{
    {ActionKind::kClick, "click"},
    {ActionKind::kLongClick, "long_click"},
    {ActionKind::kSetText, "set_text"},
    {ActionKind::kPressBack, "press_back"},
    {ActionKind::kWait, "wait"},
}};

}  // namespace

std::string_view ActionName(ActionKind kind) {
  for (const auto& [k, name] : kActions) {
    if (k == kind) return name;
  }
  return "unknown";
}

ActionKind ActionFromName(std::string_view name) {
  for (const auto& [k, n] : kActions) {
    if (n == name) return k;
  }
  return ActionKind::kUnknown;
}

bool If::operator==(const If& other) const {
  return condition == other.condition && then_body == other.then_body &&
         else_body == other.else_body;
}

}  // namespace propforge::propdsl
