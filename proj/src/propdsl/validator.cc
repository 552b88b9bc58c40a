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

#include "propforge/propdsl/validator.h"

#include <map>

#include "propforge/common/text.h"
#include "propforge/grounding/annotation.h"
#include "propforge/grounding/matcher.h"

namespace propforge::propdsl {
namespace {

enum class Type { kString, kBool, kWidget, kList, kInvalid };

std::string_view TypeName(Type t) {
  switch (t) {
    case Type::kString: return "string";
    case Type::kBool: return "bool";
    case Type::kWidget: return "widget";
    case Type::kList: return "widget list";
    case Type::kInvalid: return "invalid";
  }
  return "?";
}

using Scope = std::map<std::string, Type>;

class Checker {
 public:
  std::vector<Diagnostic> diags;

  void Error(const char* code, const std::string& msg, SourcePos pos) {
    diags.push_back({Severity::kError, code, msg, pos, ""});
  }

  Type VarType(const std::string& name, const Scope& scope, SourcePos pos) {
    const auto it = scope.find(name);
    if (it == scope.end()) {
      Error(kUnboundVar, "variable '" + name + "' is not bound", pos);
      return Type::kInvalid;
    }
    return it->second;
  }

  // Returns the type a target denotes (selectors denote widgets).
  Type TargetType(const Target& target, const Scope& scope) {
    if (std::holds_alternative<Selector>(target)) return Type::kWidget;
    const auto& ref = std::get<VarRef>(target);
    return VarType(ref.name, scope, ref.pos);
  }

  void RequireWidgetTarget(const Target& target, const Scope& scope,
                           std::string_view what, SourcePos pos) {
    const Type t = TargetType(target, scope);
    if (t != Type::kWidget && t != Type::kInvalid) {
      Error(kTypeMismatch,
            std::string(what) + " needs a single widget, got a " +
                std::string(TypeName(t)),
            pos);
    }
  }

  void Expect(const Expr& e, Type want, const Scope& scope,
              std::string_view context) {
    const Type got = TypeOf(e, scope);
    if (got != want && got != Type::kInvalid) {
      Error(kTypeMismatch,
            std::string(context) + " must be " + std::string(TypeName(want)) +
                ", got " + std::string(TypeName(got)),
            e.pos);
    }
  }

  Type TypeOf(const Expr& e, const Scope& scope) {
    switch (e.kind) {
      case ExprKind::kString:
      case ExprKind::kNumber:
        return Type::kString;
      case ExprKind::kBool:
        return Type::kBool;
      case ExprKind::kVar:
        return VarType(e.value, scope, e.pos);
      case ExprKind::kAttr:
        RequireWidgetTarget(e.target, scope, "attr()", e.pos);
        return Type::kString;
      case ExprKind::kExists:
        TargetType(e.target, scope);
        return Type::kBool;
      case ExprKind::kContains:
      case ExprKind::kStartsWith:
      case ExprKind::kEquals: {
        if (e.args.size() != 2) {
          Error(kMalformedNode,
                std::string(ExprKindName(e.kind)) + " takes 2 arguments",
                e.pos);
          return Type::kInvalid;
        }
        const std::string ctx = "argument of " + std::string(ExprKindName(e.kind));
        Expect(e.args[0], Type::kString, scope, ctx);
        Expect(e.args[1], Type::kString, scope, ctx);
        return Type::kBool;
      }
      case ExprKind::kNot:
      case ExprKind::kAnd:
      case ExprKind::kOr: {
        const bool unary = e.kind == ExprKind::kNot;
        if (unary ? e.args.size() != 1 : e.args.size() < 2) {
          Error(kMalformedNode,
                std::string(ExprKindName(e.kind)) +
                    (unary ? " takes 1 operand" : " takes at least 2 operands"),
                e.pos);
          return Type::kInvalid;
        }
        const std::string ctx = "operand of " + std::string(ExprKindName(e.kind));
        for (const auto& a : e.args) Expect(a, Type::kBool, scope, ctx);
        return Type::kBool;
      }
    }
    return Type::kInvalid;
  }

  void CheckAction(const Action& a, const Scope& scope) {
    switch (a.kind) {
      case ActionKind::kUnknown:
        Error(kUnknownAction, "unknown action '" + a.name + "'", a.pos);
        return;
      case ActionKind::kClick:
      case ActionKind::kLongClick:
      case ActionKind::kSetText:
        if (!a.target) {
          Error(kBadArgument,
                std::string(ActionName(a.kind)) + " needs a target", a.pos);
        } else {
          RequireWidgetTarget(*a.target, scope, ActionName(a.kind), a.pos);
        }
        if (a.kind == ActionKind::kSetText && !a.text) {
          Error(kBadArgument, "set_text needs a text argument", a.pos);
        }
        break;
      case ActionKind::kWait:
        if (!a.duration_ms || *a.duration_ms <= 0 ||
            *a.duration_ms > kMaxWaitMs) {
          Error(kBadArgument,
                "wait duration must be in (0, " + std::to_string(kMaxWaitMs) +
                    "] ms",
                a.pos);
        }
        break;
      case ActionKind::kPressBack:
        break;
    }
    const bool targeted = a.kind == ActionKind::kClick ||
                          a.kind == ActionKind::kLongClick ||
                          a.kind == ActionKind::kSetText;
    if (!targeted && a.target) {
      Error(kBadArgument,
            std::string(ActionName(a.kind)) + " takes no target", a.pos);
    }
    if (a.kind != ActionKind::kSetText && a.text) {
      Error(kBadArgument,
            std::string(ActionName(a.kind)) + " takes no text", a.pos);
    }
    if (a.kind != ActionKind::kWait && a.duration_ms) {
      Error(kBadArgument,
            std::string(ActionName(a.kind)) + " takes no duration", a.pos);
    }
  }

  // Returns the number of actions in `body`, counting every branch.
  int CheckBody(const std::vector<Stmt>& body, Scope& scope) {
    int events = 0;
    for (const auto& s : body) {
      if (const auto* let = std::get_if<LetAll>(&s.node)) {
        scope[let->var] = Type::kList;
      } else if (const auto* pick = std::get_if<LetPick>(&s.node)) {
        const Type src = VarType(pick->source, scope, pick->pos);
        if (src != Type::kList && src != Type::kInvalid) {
          Error(kTypeMismatch,
                "pick source '" + pick->source + "' must be a widget list, got " +
                    std::string(TypeName(src)),
                pick->pos);
        }
        Scope inner = scope;
        inner[pick->element] = Type::kWidget;
        Expect(pick->predicate, Type::kBool, inner, "pick predicate");
        scope[pick->var] = Type::kWidget;
      } else if (const auto* d = std::get_if<Do>(&s.node)) {
        CheckAction(d->action, scope);
        ++events;
      } else if (const auto* branch = std::get_if<If>(&s.node)) {
        Expect(branch->condition, Type::kBool, scope, "if condition");
        Scope then_scope = scope;
        events += CheckBody(branch->then_body, then_scope);
        if (branch->else_body) {
          Scope else_scope = scope;
          events += CheckBody(*branch->else_body, else_scope);
        }
      }
    }
    return events;
  }
};

std::string QueryFor(const Selector& s) {
  std::vector<std::string> words;
  for (const auto& c : s.clauses) {
    if (c.field == Field::kId) {
      words.push_back(grounding::HumanizeResourceId(c.value));
    } else if (c.field != Field::kClass) {
      words.push_back(c.value);
    }
  }
  return Join(words, " ");
}

void CheckGrounding(const PropertyAST& ast,
                    const grounding::WidgetContextStore& store,
                    std::vector<Diagnostic>& diags) {
  ForEachSelector(ast, [&](const Selector& s) {
    if (s.clauses.empty()) return;
    if (!grounding::ResolveSelector(s, store).empty()) return;
    Diagnostic d{Severity::kWarning, kUngrounded,
                 FormatSelector(s) + " matches no widget in the context store",
                 s.pos, ""};
    const std::string query = QueryFor(s);
    if (!WordTokens(query).empty()) {
      const auto result = grounding::MatchWidget(query, store);
      if (!result.candidates.empty()) {
        const auto* best = store.Find(result.candidates.front().widget_uid);
        if (best) {
          d.suggestion =
              FormatSelector(grounding::MostSpecificSelector(*best, store));
          d.message += "; closest match " + d.suggestion;
        }
      }
    }
    diags.push_back(std::move(d));
  });
}

}  // namespace

std::vector<Diagnostic> Validate(const PropertyAST& ast,
                                 const grounding::WidgetContextStore* store) {
  Checker checker;
  const Scope empty;
  checker.Expect(ast.precondition, Type::kBool, empty, "precondition");
  Scope scope;
  const int events = checker.CheckBody(ast.interaction, scope);
  if (events == 0) {
    checker.Error(kNoEvents, "interaction contains no action", ast.pos);
  }
  for (const auto& q : ast.postcondition) {
    checker.Expect(q, Type::kBool, scope, "assertion");
  }
  ForEachSelector(ast, [&](const Selector& s) {
    bool empty_value = false;
    for (const auto& c : s.clauses) empty_value |= c.value.empty();
    if (s.clauses.empty() || empty_value) {
      checker.Error(kMalformedNode,
                    "selector needs at least one clause and non-empty values",
                    s.pos);
    }
  });
  if (store) CheckGrounding(ast, *store, checker.diags);
  return std::move(checker.diags);
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) return true;
  }
  return false;
}

std::string FormatDiagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::kError ? "error" : "warning";
  if (d.pos.line > 0) {
    out += " " + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column);
  }
  return out + " [" + d.code + "] " + d.message;
}

}  // namespace propforge::propdsl
