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

// The executable-property IR: a precondition, an interaction scenario and a
// list of postcondition assertions.
//
//   property open_directory {
//     pre {
//       exists(widget(id="list_item")) and exists(widget(id="search"))
//     }
//     run {
//       let names = all widget(id="list_item")
//       let picked = pick item in names where not contains(attr(item, text), ".")
//       click(picked)
//     }
//     post {
//       assert contains(attr(widget(id="path"), text), attr(picked, text))
//     }
//   }
//
// Structural equality (operator==) ignores source positions.

#ifndef PROPFORGE_PROPDSL_AST_H_
#define PROPFORGE_PROPDSL_AST_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "propforge/propdsl/selector.h"

namespace propforge::propdsl {

struct VarRef {
  std::string name;
  SourcePos pos;

  bool operator==(const VarRef&) const = default;
};

// What an action or attribute read applies to.
using Target = std::variant<Selector, VarRef>;

enum class ExprKind {
  kString,      // value
  kNumber,      // value holds the literal spelling
  kBool,        // flag
  kVar,         // value holds the name
  kAttr,        // target, field
  kExists,      // target
  kContains,    // args[0], args[1]
  kStartsWith,  // args[0], args[1]
  kEquals,      // args[0], args[1]
  kNot,         // args[0]
  kAnd,         // args (>= 2)
  kOr,          // args (>= 2)
};

struct Expr {
  ExprKind kind = ExprKind::kBool;
  std::string value;
  bool flag = false;
  Target target;
  Field field = Field::kText;
  std::vector<Expr> args;
  SourcePos pos;

  bool operator==(const Expr&) const = default;

  static Expr String(std::string s);
  static Expr Number(std::string spelling);
  static Expr Bool(bool b);
  static Expr Var(std::string name);
  static Expr Attr(Target target, Field field);
  static Expr Exists(Target target);
  static Expr Call(ExprKind kind, Expr lhs, Expr rhs);
  static Expr Not(Expr operand);
  static Expr Logical(ExprKind kind, std::vector<Expr> operands);
};

bool IsLogical(ExprKind kind);    // not / and / or
bool IsPredicate(ExprKind kind);  // contains / startswith / equals
std::string_view ExprKindName(ExprKind kind);

enum class ActionKind { kClick, kLongClick, kSetText, kPressBack, kWait, kUnknown };

std::string_view ActionName(ActionKind kind);
ActionKind ActionFromName(std::string_view name);

struct Action {
  ActionKind kind = ActionKind::kClick;
  std::string name;  // spelling as written; meaningful for kUnknown
  std::optional<Target> target;
  std::optional<std::string> text;  // set_text payload
  std::optional<long> duration_ms;  // wait
  SourcePos pos;

  bool operator==(const Action&) const = default;
};

inline constexpr long kMaxWaitMs = 10'000;

struct Stmt;

// let items = all widget(...)
struct LetAll {
  std::string var;
  Selector selector;
  SourcePos pos;

  bool operator==(const LetAll&) const = default;
};

// let picked = pick item in items where <predicate>
struct LetPick {
  std::string var;
  std::string element;
  std::string source;
  Expr predicate;
  SourcePos pos;

  bool operator==(const LetPick&) const = default;
};

struct Do {
  Action action;

  bool operator==(const Do&) const = default;
};

struct If {
  Expr condition;
  std::vector<Stmt> then_body;
  std::optional<std::vector<Stmt>> else_body;
  SourcePos pos;

  bool operator==(const If&) const;
};

struct Stmt {
  std::variant<LetAll, LetPick, Do, If> node;

  bool operator==(const Stmt&) const = default;
};

struct PropertyAST {
  std::string name;
  Expr precondition;
  std::vector<Stmt> interaction;
  std::vector<Expr> postcondition;
  SourcePos pos;

  bool operator==(const PropertyAST&) const = default;
};

// Calls fn(const Selector&) for every selector in the property, in source
// order.
template <typename Fn>
void ForEachSelector(const Expr& e, Fn&& fn);
template <typename Fn>
void ForEachSelector(const std::vector<Stmt>& body, Fn&& fn);
template <typename Fn>
void ForEachSelector(const PropertyAST& ast, Fn&& fn);

// Mutable variant, for rewriting selectors in place.
template <typename Fn>
void RewriteSelectors(Expr& e, Fn&& fn);
template <typename Fn>
void RewriteSelectors(std::vector<Stmt>& body, Fn&& fn);
template <typename Fn>
void RewriteSelectors(PropertyAST& ast, Fn&& fn);

// ---------------------------------------------------------------------------

template <typename Fn>
void ForEachSelector(const Expr& e, Fn&& fn) {
  if ((e.kind == ExprKind::kAttr || e.kind == ExprKind::kExists) &&
      std::holds_alternative<Selector>(e.target)) {
    fn(std::get<Selector>(e.target));
  }
  for (const auto& a : e.args) ForEachSelector(a, fn);
}

template <typename Fn>
void ForEachSelector(const std::vector<Stmt>& body, Fn&& fn) {
  for (const auto& s : body) {
    if (const auto* let = std::get_if<LetAll>(&s.node)) {
      fn(let->selector);
    } else if (const auto* pick = std::get_if<LetPick>(&s.node)) {
      ForEachSelector(pick->predicate, fn);
    } else if (const auto* d = std::get_if<Do>(&s.node)) {
      if (d->action.target && std::holds_alternative<Selector>(*d->action.target)) {
        fn(std::get<Selector>(*d->action.target));
      }
    } else if (const auto* branch = std::get_if<If>(&s.node)) {
      ForEachSelector(branch->condition, fn);
      ForEachSelector(branch->then_body, fn);
      if (branch->else_body) ForEachSelector(*branch->else_body, fn);
    }
  }
}

template <typename Fn>
void ForEachSelector(const PropertyAST& ast, Fn&& fn) {
  ForEachSelector(ast.precondition, fn);
  ForEachSelector(ast.interaction, fn);
  for (const auto& q : ast.postcondition) ForEachSelector(q, fn);
}

template <typename Fn>
void RewriteSelectors(Expr& e, Fn&& fn) {
  if ((e.kind == ExprKind::kAttr || e.kind == ExprKind::kExists) &&
      std::holds_alternative<Selector>(e.target)) {
    fn(std::get<Selector>(e.target));
  }
  for (auto& a : e.args) RewriteSelectors(a, fn);
}

template <typename Fn>
void RewriteSelectors(std::vector<Stmt>& body, Fn&& fn) {
  for (auto& s : body) {
    if (auto* let = std::get_if<LetAll>(&s.node)) {
      fn(let->selector);
    } else if (auto* pick = std::get_if<LetPick>(&s.node)) {
      RewriteSelectors(pick->predicate, fn);
    } else if (auto* d = std::get_if<Do>(&s.node)) {
      if (d->action.target && std::holds_alternative<Selector>(*d->action.target)) {
        fn(std::get<Selector>(*d->action.target));
      }
    } else if (auto* branch = std::get_if<If>(&s.node)) {
      RewriteSelectors(branch->condition, fn);
      RewriteSelectors(branch->then_body, fn);
      if (branch->else_body) RewriteSelectors(*branch->else_body, fn);
    }
  }
}

template <typename Fn>
void RewriteSelectors(PropertyAST& ast, Fn&& fn) {
  RewriteSelectors(ast.precondition, fn);
  RewriteSelectors(ast.interaction, fn);
  for (auto& q : ast.postcondition) RewriteSelectors(q, fn);
}

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_AST_H_
