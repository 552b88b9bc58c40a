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

#include "propforge/propdsl/emitter.h"

#include <cctype>
#include <cstdlib>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/text.h"
#include "propforge/propdsl/printer.h"

namespace propforge::propdsl {
namespace {

using Vars = std::map<std::string, std::string>;

bool IsBlank(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

std::string Substitute(std::string_view pattern, const Vars& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] != '{') {
      out.push_back(pattern[i++]);
      continue;
    }
    std::size_t j = i + 1;
    while (j < pattern.size() &&
           (std::islower(static_cast<unsigned char>(pattern[j])) ||
            pattern[j] == '_')) {
      ++j;
    }
    const auto it = j < pattern.size() && pattern[j] == '}' && j > i + 1
                        ? vars.find(std::string(pattern.substr(i + 1, j - i - 1)))
                        : vars.end();
    if (it == vars.end()) {
      out.push_back(pattern[i++]);
      continue;
    }
    const std::size_t line_start = out.rfind('\n') == std::string::npos
                                       ? 0
                                       : out.rfind('\n') + 1;
    const std::string prefix = out.substr(line_start);
    const bool own_line = IsBlank(prefix);
    const std::string& value = it->second;
    i = j + 1;
    if (own_line && value.empty() &&
        (i == pattern.size() || pattern[i] == '\n')) {
      out.resize(line_start);
      if (i < pattern.size()) ++i;  // swallow the newline
      continue;
    }
    if (!own_line) {
      out += value;
      continue;
    }
    for (std::size_t k = 0; k < value.size(); ++k) {
      out.push_back(value[k]);
      if (value[k] == '\n' && k + 1 < value.size()) out += prefix;
    }
  }
  return out;
}

std::string Seconds(long ms) {
  std::string s = std::to_string(std::labs(ms) / 1000);
  long frac = std::labs(ms) % 1000;
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, 3 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return ms < 0 ? "-" + s : s;
}

class Emitter {
 public:
  explicit Emitter(const EmissionTemplate& t) : t_(t) {}

  std::string Property(const PropertyAST& ast) {
    std::vector<std::string> post;
    for (const auto& q : ast.postcondition) {
      post.push_back(Render("assert", {{"expr", ExprText(q)}}));
    }
    return Render("property", {{"name", ast.name},
                               {"pre", ExprText(ast.precondition)},
                               {"run", Body(ast.interaction)},
                               {"post", Join(post, "\n")}});
  }

 private:
  const std::string& Pattern(const std::string& key) const {
    const auto it = t_.nodes.find(key);
    if (it == t_.nodes.end()) {
      throw Error(ErrorCode::kUnsupportedNode,
                  "template '" + t_.name + "' has no rendering for '" + key +
                      "'");
    }
    return it->second;
  }

  std::string Render(const std::string& key, const Vars& vars) const {
    return Substitute(Pattern(key), vars);
  }

  std::string Body(const std::vector<Stmt>& body) {
    std::vector<std::string> lines;
    for (const auto& s : body) lines.push_back(StmtText(s));
    return Join(lines, "\n");
  }

  std::string StmtText(const Stmt& s) {
    if (const auto* let = std::get_if<LetAll>(&s.node)) {
      return Render("let_all",
                    {{"var", let->var}, {"selector", SelectorText(let->selector)}});
    }
    if (const auto* pick = std::get_if<LetPick>(&s.node)) {
      return Render("let_pick", {{"var", pick->var},
                                 {"element", pick->element},
                                 {"source", pick->source},
                                 {"predicate", ExprText(pick->predicate)}});
    }
    if (const auto* d = std::get_if<Do>(&s.node)) return ActionText(d->action);
    const auto& branch = std::get<If>(s.node);
    Vars vars = {{"cond", ExprText(branch.condition)},
                 {"then", Body(branch.then_body)}};
    if (!branch.else_body) return Render("if", vars);
    vars["else"] = Body(*branch.else_body);
    return Render("if_else", vars);
  }

  std::string ActionText(const Action& a) {
    Vars vars;
    std::vector<std::string> args;
    if (a.target) {
      vars["target"] = TargetText(*a.target);
      args.push_back(vars["target"]);
    }
    if (a.text) {
      vars["text"] = QuoteString(*a.text);
      args.push_back(vars["text"]);
    }
    if (a.duration_ms) {
      vars["ms"] = std::to_string(*a.duration_ms);
      vars["seconds"] = Seconds(*a.duration_ms);
      args.push_back(vars["ms"]);
    }
    vars["name"] = a.kind == ActionKind::kUnknown ? a.name
                                                  : std::string(ActionName(a.kind));
    vars["args"] = Join(args, ", ");
    return Render(a.kind == ActionKind::kUnknown ? "unknown_action"
                                                 : std::string(ActionName(a.kind)),
                  vars);
  }

  std::string SelectorText(const Selector& s) {
    const bool contains = s.mode == MatchMode::kContains;
    const std::string prefix = contains ? "clause_contains." : "clause.";
    std::vector<std::string> clauses;
    for (const auto& c : s.clauses) {
      clauses.push_back(Render(prefix + std::string(FieldName(c.field)),
                               {{"value", QuoteString(c.value)}}));
    }
    const std::string sep =
        s.clauses.size() > 1 ? Pattern("clause_sep") : std::string();
    return Render(contains ? "selector_contains" : "selector",
                  {{"clauses", Join(clauses, sep)}});
  }

  std::string TargetText(const Target& target) {
    if (const auto* s = std::get_if<Selector>(&target)) return SelectorText(*s);
    return Render("var", {{"name", std::get<VarRef>(target).name}});
  }

  std::string Operand(ExprKind parent, const Expr& child) {
    std::string text = ExprText(child);
    if (!NeedsParens(parent, child)) return text;
    return Render("group", {{"expr", text}});
  }

  std::string ExprText(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kString:
        return Render("string", {{"value", QuoteString(e.value)}});
      case ExprKind::kNumber:
        return Render("number", {{"value", e.value}});
      case ExprKind::kBool:
        return Render(e.flag ? "true" : "false", {});
      case ExprKind::kVar:
        return Render("var", {{"name", e.value}});
      case ExprKind::kAttr: {
        const std::string field(FieldName(e.field));
        const std::string key =
            t_.nodes.count("attr." + field) ? "attr." + field : "attr";
        return Render(key, {{"target", TargetText(e.target)}, {"field", field}});
      }
      case ExprKind::kExists:
        return Render("exists", {{"target", TargetText(e.target)}});
      case ExprKind::kContains:
      case ExprKind::kStartsWith:
      case ExprKind::kEquals:
        return Render(std::string(ExprKindName(e.kind)),
                      {{"lhs", ExprText(e.args.at(0))},
                       {"rhs", ExprText(e.args.at(1))}});
      case ExprKind::kNot:
        return Render("not", {{"operand", Operand(e.kind, e.args.at(0))}});
      case ExprKind::kAnd:
      case ExprKind::kOr: {
        const std::string& sep =
            Pattern(e.kind == ExprKind::kAnd ? "and_sep" : "or_sep");
        std::vector<std::string> parts;
        for (const auto& a : e.args) parts.push_back(Operand(e.kind, a));
        return Join(parts, sep);
      }
    }
    return "";
  }

  const EmissionTemplate& t_;
};

}  // namespace

EmissionTemplate TemplateFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_object()) {
    throw Error(ErrorCode::kSchemaError, "template needs a \"nodes\" object");
  }
  EmissionTemplate t;
  t.name = j.value("name", "unnamed");
  for (const auto& [key, value] : j["nodes"].items()) {
    if (!value.is_string()) {
      throw Error(ErrorCode::kSchemaError,
                  "template node '" + key + "' must be a string");
    }
    t.nodes[key] = value.get<std::string>();
  }
  return t;
}

EmissionTemplate LoadTemplate(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, path.string() + ": " + e.what());
  }
  return TemplateFromJson(j);
}

std::string EmitFrameworkScript(const PropertyAST& ast,
                                const EmissionTemplate& tmpl) {
  return Emitter(tmpl).Property(ast);
}

}  // namespace propforge::propdsl
