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

#include "propforge/synthesis/baseline.h"

#include <cctype>
#include <optional>
#include <vector>

#include "propforge/common/error.h"
#include "propforge/common/text.h"
#include "propforge/grounding/matcher.h"
#include "propforge/propdsl/parser.h"
#include "propforge/synthesis/phrase_match.h"

namespace propforge::synthesis {
namespace {

using propdsl::Action;
using propdsl::ActionKind;
using propdsl::Expr;
using propdsl::ExprKind;
using propdsl::Selector;
using propdsl::Stmt;
using propdsl::Target;
using propdsl::VarRef;

// Position of `needle` (lowercase) in `s` outside double-quoted spans.
std::size_t FindUnquoted(std::string_view s, std::string_view needle,
                         std::size_t from = 0) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (!quoted && i >= from && i + needle.size() <= s.size() &&
        ToLower(s.substr(i, needle.size())) == needle) {
      return i;
    }
  }
  return std::string_view::npos;
}

std::optional<std::string> FirstQuoted(std::string_view s) {
  const auto open = s.find('"');
  if (open == std::string_view::npos) return std::nullopt;
  const auto close = s.find('"', open + 1);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(s.substr(open + 1, close - open - 1));
}

std::string_view StripPeriod(std::string_view s) {
  s = Trim(s);
  while (!s.empty() && (s.back() == '.' || s.back() == ';')) s.remove_suffix(1);
  return Trim(s);
}

// Strips a trailing existence phrase; returns false when there is none.
bool StripSuffix(std::string_view& s, std::initializer_list<std::string_view> tails) {
  const std::string lower = ToLower(s);
  for (auto tail : tails) {
    if (lower.size() >= tail.size() &&
        std::string_view(lower).substr(lower.size() - tail.size()) == tail) {
      s = Trim(s.substr(0, s.size() - tail.size()));
      return true;
    }
  }
  return false;
}

bool HasWord(std::string_view phrase, std::initializer_list<std::string_view> words) {
  for (const auto& t : WordTokens(phrase)) {
    for (auto w : words) {
      if (t == w) return true;
    }
  }
  return false;
}

struct Comparator {
  std::string_view spelling;
  ExprKind kind;
  bool negated;
};

// Longer spellings first so "does not contain" wins over "contain".
constexpr Comparator kComparators[] = {
    {" does not contain ", ExprKind::kContains, true},
    {" doesn't contain ", ExprKind::kContains, true},
    {" does not start with ", ExprKind::kStartsWith, true},
    {" does not equal ", ExprKind::kEquals, true},
    {" contains ", ExprKind::kContains, false},
    {" starts with ", ExprKind::kStartsWith, false},
    {" equals ", ExprKind::kEquals, false},
    {" is equal to ", ExprKind::kEquals, false},
};

struct Split {
  std::string_view lhs;
  std::string_view rhs;
  const Comparator* op = nullptr;
};

std::optional<Split> SplitComparison(std::string_view s) {
  const Comparator* best = nullptr;
  std::size_t best_pos = std::string_view::npos;
  for (const auto& c : kComparators) {
    const auto pos = FindUnquoted(s, c.spelling);
    if (pos < best_pos) {
      best_pos = pos;
      best = &c;
    }
  }
  if (!best) return std::nullopt;
  return Split{Trim(s.substr(0, best_pos)),
               Trim(s.substr(best_pos + best->spelling.size())), best};
}

Expr Compare(const Comparator& op, Expr lhs, Expr rhs) {
  Expr call = Expr::Call(op.kind, std::move(lhs), std::move(rhs));
  return op.negated ? Expr::Not(std::move(call)) : call;
}

class Builder {
 public:
  Builder(const PropertyDescription& desc, const grounding::WidgetContextStore& store)
      : desc_(desc), store_(store) {}

  propdsl::PropertyAST Build() {
    propdsl::PropertyAST ast;
    ast.name = PropertyIdentifier(desc_.name);
    ast.precondition = Precondition(desc_.precondition_text);
    for (const auto& step : desc_.steps) {
      Step(step, ast.interaction, ast.postcondition);
    }
    return ast;
  }

 private:
  const grounding::EnrichedWidget& Resolve(std::string_view phrase) {
    if (ContentTokens(phrase).empty()) {
      throw Error(ErrorCode::kUnresolvedWidget,
                  "no widget words in \"" + std::string(phrase) + "\"");
    }
    const auto ranked = RankWidgets(phrase, store_);
    if (ranked.empty()) {
      throw Error(ErrorCode::kUnresolvedWidget,
                  "no widget matches \"" + std::string(phrase) + "\"");
    }
    return *store_.Find(ranked.front().widget_uid);
  }

  // Existence checks and lists name the widget family by resource id.
  Selector GroupSelector(std::string_view phrase) {
    const auto& w = Resolve(phrase);
    if (w.attributes.resource_id) {
      return Selector{{{propdsl::Field::kId, *w.attributes.resource_id}},
                      propdsl::MatchMode::kExact, {}};
    }
    return grounding::MostSpecificSelector(w, store_);
  }

  // Actions and attribute reads need the one widget meant.
  Selector TargetSelector(std::string_view phrase) {
    return grounding::MostSpecificSelector(Resolve(phrase), store_);
  }

  bool RefersToPick(std::string_view phrase) const {
    return picked_ && HasWord(phrase, {"it", "selected", "picked", "item", "chosen"});
  }

  Target ActionTarget(std::string_view phrase) {
    const std::string lower = ToLower(Trim(phrase));
    if (lower == "it" || lower == "them") {
      if (!last_target_) {
        throw Error(ErrorCode::kUnresolvedWidget, "\"it\" has no antecedent");
      }
      return *last_target_;
    }
    if (RefersToPick(phrase)) return VarRef{*picked_, {}};
    Target t = TargetSelector(phrase);
    last_target_ = t;
    return t;
  }

  Expr Operand(std::string_view phrase) {
    const std::string_view p = Trim(phrase);
    if (p.size() >= 2 && p.front() == '"' && p.back() == '"') {
      return Expr::String(std::string(p.substr(1, p.size() - 2)));
    }
    if (RefersToPick(p)) return Expr::Attr(VarRef{*picked_, {}}, propdsl::Field::kText);
    if (auto lit = FirstQuoted(p); lit && ContentTokens(p).size() <= 1) {
      return Expr::String(*lit);
    }
    return Expr::Attr(TargetSelector(p), propdsl::Field::kText);
  }

  // "<widget> exists" / "<widget> does not exist".
  std::optional<Expr> Existence(std::string_view phrase) {
    std::string_view p = phrase;
    if (StripSuffix(p, {" does not exist", " doesn't exist", " is not shown",
                        " is not displayed"})) {
      Selector s = GroupSelector(p);
      last_target_ = s;
      return Expr::Not(Expr::Exists(std::move(s)));
    }
    if (StripSuffix(p, {" exists", " exist", " is shown", " is displayed",
                        " is visible", " are shown", " are displayed"})) {
      Selector s = GroupSelector(p);
      last_target_ = s;
      return Expr::Exists(std::move(s));
    }
    return std::nullopt;
  }

  Expr Precondition(std::string_view text) {
    std::vector<std::string> parts;
    std::string_view rest = StripPeriod(text);
    while (!rest.empty()) {
      std::size_t cut = FindUnquoted(rest, " and ");
      std::size_t width = 5;
      const std::size_t comma = FindUnquoted(rest, ",");
      if (comma < cut) {
        cut = comma;
        width = 1;
      }
      parts.emplace_back(Trim(rest.substr(0, cut)));
      rest = cut == std::string_view::npos ? std::string_view{}
                                           : Trim(rest.substr(cut + width));
    }
    std::vector<Expr> clauses;
    for (const auto& part : parts) {
      if (ContentTokens(part).empty()) continue;
      if (auto e = Existence(part)) {
        clauses.push_back(std::move(*e));
      } else {
        Selector s = GroupSelector(part);
        clauses.push_back(Expr::Exists(std::move(s)));
      }
    }
    last_target_.reset();
    if (clauses.empty()) {
      throw Error(ErrorCode::kUnresolvedWidget,
                  "precondition names no widget: \"" + std::string(text) + "\"");
    }
    if (clauses.size() == 1) return std::move(clauses.front());
    return Expr::Logical(ExprKind::kAnd, std::move(clauses));
  }

  static Stmt DoStmt(Action a) { return Stmt{propdsl::Do{std::move(a)}}; }

  void Step(std::string_view raw, std::vector<Stmt>& body, std::vector<Expr>& post) {
    const std::string_view step = StripPeriod(raw);
    const std::string lower = ToLower(step);
    auto after = [&](std::size_t n) { return Trim(step.substr(n)); };

    if (lower.starts_with("long click ") || lower.starts_with("long-click ")) {
      Action a{ActionKind::kLongClick, "long_click", ActionTarget(after(11)), {}, {}, {}};
      body.push_back(DoStmt(std::move(a)));
    } else if (lower.starts_with("click ")) {
      Action a{ActionKind::kClick, "click", ActionTarget(after(6)), {}, {}, {}};
      body.push_back(DoStmt(std::move(a)));
    } else if (lower.starts_with("input ")) {
      const auto text = FirstQuoted(step);
      std::size_t into = FindUnquoted(step, " into ");
      std::size_t width = 6;
      if (into == std::string_view::npos) {
        into = FindUnquoted(step, " in ");
        width = 4;
      }
      if (!text || into == std::string_view::npos) {
        throw Error(ErrorCode::kUnrecognizedStep,
                    "expected input \"<text>\" into <widget>: " + std::string(step));
      }
      Action a{ActionKind::kSetText, "set_text", ActionTarget(after(into + width)),
               *text, {}, {}};
      body.push_back(DoStmt(std::move(a)));
    } else if (lower == "press back" || lower.starts_with("press back ") ||
               lower == "press the back button") {
      body.push_back(DoStmt(Action{ActionKind::kPressBack, "press_back", {}, {}, {}, {}}));
    } else if (lower.starts_with("get ")) {
      const std::string var = ++lists_ == 1 ? "items" : "items" + std::to_string(lists_);
      body.push_back(Stmt{propdsl::LetAll{var, GroupSelector(after(4)), {}}});
      list_ = var;
    } else if (lower.starts_with("select ")) {
      SelectStep(step, body);
    } else if (lower.starts_with("assert ")) {
      post.push_back(Assertion(after(7), step));
    } else if (lower.starts_with("if ")) {
      IfStep(step, body, post);
    } else {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "step does not start with a known verb: \"" + std::string(step) + "\"");
    }
  }

  void SelectStep(std::string_view step, std::vector<Stmt>& body) {
    if (!list_) {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "select needs an earlier get step: \"" + std::string(step) + "\"");
    }
    const auto split = SplitComparison(step);
    const auto lit = split ? FirstQuoted(split->rhs) : std::nullopt;
    if (!split || !lit) {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "expected select <item> that contains \"<text>\": " +
                      std::string(step));
    }
    ++picks_;
    const std::string var = picks_ == 1 ? "picked" : "picked" + std::to_string(picks_);
    Expr pred = Compare(*split->op, Expr::Attr(VarRef{"item", {}}, propdsl::Field::kText),
                        Expr::String(*lit));
    body.push_back(Stmt{propdsl::LetPick{var, "item", *list_, std::move(pred), {}}});
    picked_ = var;
    last_target_ = VarRef{var, {}};
  }

  Expr Assertion(std::string_view body, std::string_view step) {
    if (auto e = Existence(body)) return std::move(*e);
    const auto split = SplitComparison(body);
    if (!split) {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "cannot read assertion: \"" + std::string(step) + "\"");
    }
    return Compare(*split->op, Operand(split->lhs), Operand(split->rhs));
  }

  void IfStep(std::string_view step, std::vector<Stmt>& body, std::vector<Expr>& post) {
    const std::size_t comma = FindUnquoted(step, ",");
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "expected if <condition>, <step>: " + std::string(step));
    }
    auto cond = Existence(Trim(step.substr(3, comma - 3)));
    if (!cond) {
      throw Error(ErrorCode::kUnrecognizedStep,
                  "if condition must be an existence check: " + std::string(step));
    }
    std::string_view rest = Trim(step.substr(comma + 1));
    std::string_view else_part;
    for (std::string_view word : {", otherwise ", ", else ", " otherwise "}) {
      const auto pos = FindUnquoted(rest, word);
      if (pos != std::string_view::npos) {
        else_part = Trim(rest.substr(pos + word.size()));
        rest = Trim(rest.substr(0, pos));
        break;
      }
    }
    const auto saved = last_target_;
    propdsl::If branch{std::move(*cond), {}, std::nullopt, {}};
    Step(rest, branch.then_body, post);
    if (!else_part.empty()) {
      last_target_ = saved;
      branch.else_body.emplace();
      Step(else_part, *branch.else_body, post);
    }
    body.push_back(Stmt{std::move(branch)});
  }

  const PropertyDescription& desc_;
  const grounding::WidgetContextStore& store_;
  std::optional<std::string> list_;
  std::optional<std::string> picked_;
  std::optional<Target> last_target_;
  int lists_ = 0;
  int picks_ = 0;
};

}  // namespace

std::string PropertyIdentifier(std::string_view name) {
  std::string id;
  for (char c : name) {
    id += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  if (id.empty()) id = "property";
  if (std::isdigit(static_cast<unsigned char>(id.front())) ||
      propdsl::IsReservedWord(id)) {
    id = "p_" + id;
  }
  return id;
}

propdsl::PropertyAST BaselineSynthesize(const PropertyDescription& desc,
                                        const grounding::WidgetContextStore& store) {
  return Builder(desc, store).Build();
}

}  // namespace propforge::synthesis
