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

#include "propforge/propdsl/printer.h"

#include "propforge/common/text.h"

namespace propforge::propdsl {
namespace {

void AppendIndent(std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

void PrintBody(std::string& out, const std::vector<Stmt>& body, int depth);

void PrintStmt(std::string& out, const Stmt& stmt, int depth) {
  AppendIndent(out, depth);
  if (const auto* let = std::get_if<LetAll>(&stmt.node)) {
    out += "let " + let->var + " = all " + FormatSelector(let->selector) + "\n";
  } else if (const auto* pick = std::get_if<LetPick>(&stmt.node)) {
    out += "let " + pick->var + " = pick " + pick->element + " in " +
           pick->source + " where " + PrintExpr(pick->predicate) + "\n";
  } else if (const auto* d = std::get_if<Do>(&stmt.node)) {
    out += PrintAction(d->action) + "\n";
  } else if (const auto* branch = std::get_if<If>(&stmt.node)) {
    out += "if " + PrintExpr(branch->condition) + " {\n";
    PrintBody(out, branch->then_body, depth + 1);
    AppendIndent(out, depth);
    if (branch->else_body) {
      out += "} else {\n";
      PrintBody(out, *branch->else_body, depth + 1);
      AppendIndent(out, depth);
    }
    out += "}\n";
  }
}

void PrintBody(std::string& out, const std::vector<Stmt>& body, int depth) {
  for (const auto& s : body) PrintStmt(out, s, depth);
}

std::string PrintOperand(ExprKind parent, const Expr& child) {
  std::string s = PrintExpr(child);
  return NeedsParens(parent, child) ? "(" + s + ")" : s;
}

}  // namespace

bool NeedsParens(ExprKind parent, const Expr& child) {
  switch (parent) {
    case ExprKind::kAnd:
    case ExprKind::kNot:
      return child.kind == ExprKind::kAnd || child.kind == ExprKind::kOr;
    case ExprKind::kOr:
      return child.kind == ExprKind::kOr;
    default:
      return false;
  }
}

std::string PrintTarget(const Target& target) {
  if (const auto* s = std::get_if<Selector>(&target)) return FormatSelector(*s);
  return std::get<VarRef>(target).name;
}

std::string PrintExpr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kString: return QuoteString(e.value);
    case ExprKind::kNumber: return e.value;
    case ExprKind::kBool: return e.flag ? "true" : "false";
    case ExprKind::kVar: return e.value;
    case ExprKind::kAttr:
      return "attr(" + PrintTarget(e.target) + ", " +
             std::string(FieldName(e.field)) + ")";
    case ExprKind::kExists: return "exists(" + PrintTarget(e.target) + ")";
    case ExprKind::kContains:
    case ExprKind::kStartsWith:
    case ExprKind::kEquals:
      return std::string(ExprKindName(e.kind)) + "(" + PrintExpr(e.args.at(0)) +
             ", " + PrintExpr(e.args.at(1)) + ")";
    case ExprKind::kNot: return "not " + PrintOperand(e.kind, e.args.at(0));
    case ExprKind::kAnd:
    case ExprKind::kOr: {
      const std::string sep = e.kind == ExprKind::kAnd ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += sep;
        out += PrintOperand(e.kind, e.args[i]);
      }
      return out;
    }
  }
  return "";
}

std::string PrintAction(const Action& a) {
  const std::string name =
      a.kind == ActionKind::kUnknown ? a.name : std::string(ActionName(a.kind));
  std::vector<std::string> args;
  if (a.target) args.push_back(PrintTarget(*a.target));
  if (a.text) args.push_back(QuoteString(*a.text));
  if (a.duration_ms) args.push_back(std::to_string(*a.duration_ms));
  return name + "(" + Join(args, ", ") + ")";
}

std::string PrintProperty(const PropertyAST& ast) {
  std::string out = "property " + ast.name + " {\n";
  out += "  pre {\n    " + PrintExpr(ast.precondition) + "\n  }\n";
  out += "  run {\n";
  PrintBody(out, ast.interaction, 2);
  out += "  }\n  post {\n";
  for (const auto& q : ast.postcondition) {
    out += "    assert " + PrintExpr(q) + "\n";
  }
  out += "  }\n}\n";
  return out;
}

}  // namespace propforge::propdsl
