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

#include "propforge/simulator/executor.h"

#include <cstdio>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <variant>

#include <nlohmann/json.hpp>

#include "propforge/capture/page_capture.h"
#include "propforge/capture/view_hierarchy.h"
#include "propforge/common/file_io.h"
#include "propforge/propdsl/printer.h"

namespace propforge::simulator {
namespace {

using propdsl::ActionKind;
using propdsl::Expr;
using propdsl::ExprKind;
using propdsl::Stmt;

constexpr int kRowHeight = 120;
constexpr int kScreenWidth = 1080;
constexpr int kTopOffset = 200;
// Bounds the exploration behind capture export.
constexpr std::size_t kMaxExploredStates = 64;

// A widget as seen when it was bound, so reads after navigation still see
// what the user saw.
struct WidgetRef {
  std::string screen;
  int index = 0;
  capture::WidgetAttributes snapshot;
};

struct Absent {};
using Value = std::variant<Absent, std::string, bool, WidgetRef, std::vector<WidgetRef>>;

// Aborts the run with an ExecutionError verdict.
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string RefName(const WidgetRef& r) {
  return r.screen + "[" + std::to_string(r.index) + "]";
}

std::string Substitute(const std::string& pattern, const SimState& state,
                       const std::string& text, const std::string& input) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.compare(i, 2, "${") == 0) {
      const auto close = pattern.find('}', i);
      if (close != std::string::npos) {
        const auto it = state.vars.find(pattern.substr(i + 2, close - i - 2));
        if (it != state.vars.end()) out += it->second;
        i = close + 1;
        continue;
      }
    }
    if (pattern.compare(i, 5, "$text") == 0) {
      out += text;
      i += 5;
    } else if (pattern.compare(i, 6, "$input") == 0) {
      out += input;
      i += 6;
    } else {
      out += pattern[i++];
    }
  }
  return out;
}

// Fires the first transition matching the action on the current screen.
// Returns false when none matches, leaving the state as it was.
bool ApplyTransition(const AppModel& model, SimState& state, ActionKind kind,
                     const capture::WidgetAttributes* w, const std::string& text,
                     const std::string& input) {
  for (const auto& t : model.transitions) {
    if (t.screen != state.screen || t.action != kind) continue;
    if (w) {
      const propdsl::Selector key{t.widget, propdsl::MatchMode::kExact, {}};
      if (!propdsl::SelectorMatches(key, propdsl::ViewOf(*w))) continue;
    }
    for (const auto& eff : t.effects) {
      if (eff.kind == Effect::Kind::kGoto) {
        state.screen = eff.screen;
      } else {
        state.vars[eff.var] = Substitute(eff.value, state, text, input);
      }
    }
    return true;
  }
  return false;
}

class Interpreter {
 public:
  explicit Interpreter(const AppModel& model) : model_(model), state_(InitialState(model)) {}

  RunResult Run(const propdsl::PropertyAST& ast) {
    RunResult result;
    try {
      if (!AsBool(Eval(ast.precondition), "precondition")) {
        result.verdict = {VerdictKind::kPreconditionUnsatisfied, ""};
        result.trace = std::move(trace_);
        return result;
      }
      Block(ast.interaction);
      bool all = true;
      for (const auto& q : ast.postcondition) {
        const bool v = AsBool(Eval(q), "assertion");
        trace_.assertion_results.push_back({propdsl::PrintExpr(q), v});
        all = all && v;
      }
      result.verdict = {all ? VerdictKind::kPassed : VerdictKind::kViolated, ""};
    } catch (const RunError& e) {
      result.verdict = {VerdictKind::kExecutionError, e.what()};
    }
    trace_.clock_ms = state_.clock_ms;
    result.trace = std::move(trace_);
    return result;
  }

 private:
  std::vector<WidgetRef> Matches(const propdsl::Selector& sel) const {
    std::vector<WidgetRef> out;
    const auto rendered = RenderScreen(model_, state_);
    for (std::size_t i = 0; i < rendered.size(); ++i) {
      if (propdsl::SelectorMatches(sel, propdsl::ViewOf(rendered[i]))) {
        out.push_back({state_.screen, static_cast<int>(i), rendered[i]});
      }
    }
    return out;
  }

  const Value& Lookup(const std::string& name) const {
    const auto it = env_.find(name);
    if (it == env_.end()) throw RunError("unbound variable '" + name + "'");
    return it->second;
  }

  static bool AsBool(const Value& v, const char* what) {
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    throw RunError(std::string(what) + " is not a boolean");
  }

  std::optional<WidgetRef> SingleWidget(const propdsl::Target& t) const {
    if (const auto* sel = std::get_if<propdsl::Selector>(&t)) {
      auto m = Matches(*sel);
      if (m.empty()) return std::nullopt;
      return m.front();
    }
    const Value& v = Lookup(std::get<propdsl::VarRef>(t).name);
    if (const auto* r = std::get_if<WidgetRef>(&v)) return *r;
    throw RunError("'" + std::get<propdsl::VarRef>(t).name + "' is not a widget");
  }

  static std::optional<std::string> Field(const capture::WidgetAttributes& a,
                                          propdsl::Field f) {
    switch (f) {
      case propdsl::Field::kText: return a.text;
      case propdsl::Field::kId: return a.resource_id;
      case propdsl::Field::kDesc: return a.content_description;
      case propdsl::Field::kClass: return a.class_name;
    }
    return std::nullopt;
  }

  Value Eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kString:
      case ExprKind::kNumber:
        return e.value;
      case ExprKind::kBool:
        return e.flag;
      case ExprKind::kVar:
        return Lookup(e.value);
      case ExprKind::kAttr: {
        const auto w = SingleWidget(e.target);
        if (!w) return Absent{};
        if (auto v = Field(w->snapshot, e.field)) return *v;
        return Absent{};
      }
      case ExprKind::kExists: {
        if (const auto* sel = std::get_if<propdsl::Selector>(&e.target)) {
          return !Matches(*sel).empty();
        }
        const Value& v = Lookup(std::get<propdsl::VarRef>(e.target).name);
        if (const auto* r = std::get_if<WidgetRef>(&v)) return r->screen == state_.screen;
        if (const auto* l = std::get_if<std::vector<WidgetRef>>(&v)) {
          return !l->empty() && l->front().screen == state_.screen;
        }
        throw RunError("exists() needs a widget");
      }
      case ExprKind::kContains:
      case ExprKind::kStartsWith:
      case ExprKind::kEquals: {
        const Value a = Eval(e.args[0]);
        const Value b = Eval(e.args[1]);
        const auto* x = std::get_if<std::string>(&a);
        const auto* y = std::get_if<std::string>(&b);
        if (!x || !y) return false;
        if (e.kind == ExprKind::kContains) return x->find(*y) != std::string::npos;
        if (e.kind == ExprKind::kStartsWith) return x->rfind(*y, 0) == 0;
        return *x == *y;
      }
      case ExprKind::kNot:
        return !AsBool(Eval(e.args[0]), "not operand");
      case ExprKind::kAnd:
        for (const auto& a : e.args) {
          if (!AsBool(Eval(a), "and operand")) return false;
        }
        return true;
      case ExprKind::kOr:
        for (const auto& a : e.args) {
          if (AsBool(Eval(a), "or operand")) return true;
        }
        return false;
    }
    throw RunError("unknown expression");
  }

  void Block(const std::vector<Stmt>& body) {
    for (const auto& s : body) {
      if (const auto* let = std::get_if<propdsl::LetAll>(&s.node)) {
        env_[let->var] = Matches(let->selector);
      } else if (const auto* pick = std::get_if<propdsl::LetPick>(&s.node)) {
        Pick(*pick);
      } else if (const auto* d = std::get_if<propdsl::Do>(&s.node)) {
        Act(d->action);
      } else if (const auto* branch = std::get_if<propdsl::If>(&s.node)) {
        if (AsBool(Eval(branch->condition), "if condition")) {
          Block(branch->then_body);
        } else if (branch->else_body) {
          Block(*branch->else_body);
        }
      }
    }
  }

  void Pick(const propdsl::LetPick& pick) {
    const Value source = Lookup(pick.source);
    const auto* list = std::get_if<std::vector<WidgetRef>>(&source);
    if (!list) throw RunError("'" + pick.source + "' is not a widget list");
    const auto saved = env_.find(pick.element) == env_.end()
                           ? std::optional<Value>()
                           : std::optional<Value>(env_[pick.element]);
    std::optional<WidgetRef> chosen;
    for (const auto& ref : *list) {
      env_[pick.element] = ref;
      if (AsBool(Eval(pick.predicate), "pick predicate")) {
        chosen = ref;
        break;
      }
    }
    if (saved) {
      env_[pick.element] = *saved;
    } else {
      env_.erase(pick.element);
    }
    if (!chosen) throw RunError("pick found no element of '" + pick.source + "'");
    env_[pick.var] = *chosen;
  }

  void Act(const propdsl::Action& a) {
    TraceEvent ev{a.kind, "", state_.screen, ""};
    if (a.kind == ActionKind::kWait) {
      state_.clock_ms += a.duration_ms.value_or(0);
    } else if (a.kind == ActionKind::kPressBack) {
      Fire(a.kind, nullptr, "", "");
    } else if (a.kind == ActionKind::kUnknown) {
      throw RunError("unknown action '" + a.name + "'");
    } else {
      if (!a.target) throw RunError(a.name + " needs a target");
      const WidgetRef w = ActTarget(*a.target);
      ev.widget = RefName(w);
      const SimWidget& sw = model_.screens.at(w.screen)[w.index];
      const std::string input = a.text.value_or("");
      if (a.kind == ActionKind::kSetText && sw.text_var) {
        state_.vars[*sw.text_var] = input;
      }
      Fire(a.kind, &w.snapshot, w.snapshot.text.value_or(""), input);
    }
    ev.screen_after = state_.screen;
    trace_.events.push_back(std::move(ev));
  }

  WidgetRef ActTarget(const propdsl::Target& t) const {
    if (const auto* sel = std::get_if<propdsl::Selector>(&t)) {
      auto m = Matches(*sel);
      if (m.empty()) {
        throw RunError("no widget matches " + propdsl::PrintTarget(t) + " on " +
                       state_.screen);
      }
      return m.front();
    }
    const auto w = SingleWidget(t);
    if (w->screen != state_.screen) {
      throw RunError(RefName(*w) + " is not on the current screen " + state_.screen);
    }
    // Act on the live widget, not the snapshot.
    return {w->screen, w->index, RenderScreen(model_, state_)[w->index]};
  }

  void Fire(ActionKind kind, const capture::WidgetAttributes* w,
            const std::string& text, const std::string& input) {
    ApplyTransition(model_, state_, kind, w, text, input);
  }

  const AppModel& model_;
  SimState state_;
  std::map<std::string, Value> env_;
  RunTrace trace_;
};

}  // namespace

SimState InitialState(const AppModel& model) {
  return {model.initial_screen, model.state_vars, 0};
}

std::vector<capture::WidgetAttributes> RenderScreen(const AppModel& model,
                                                    const SimState& state) {
  std::vector<capture::WidgetAttributes> out;
  for (const auto& w : model.screens.at(state.screen)) {
    capture::WidgetAttributes a = w.attributes;
    if (w.text_var) {
      const std::string& v = state.vars.at(*w.text_var);
      a.text = v.empty() ? std::nullopt : std::optional<std::string>(v);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<capture::WidgetAttributes> EvaluateSelector(
    const AppModel& model, const SimState& state, const propdsl::Selector& sel) {
  std::vector<capture::WidgetAttributes> out;
  for (auto& w : RenderScreen(model, state)) {
    if (propdsl::SelectorMatches(sel, propdsl::ViewOf(w))) out.push_back(std::move(w));
  }
  return out;
}

std::string_view VerdictName(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kPassed: return "Passed";
    case VerdictKind::kViolated: return "Violated";
    case VerdictKind::kPreconditionUnsatisfied: return "PreconditionUnsatisfied";
    case VerdictKind::kExecutionError: return "ExecutionError";
  }
  return "?";
}

RunResult ExecuteProperty(const AppModel& model, const propdsl::PropertyAST& ast) {
  return Interpreter(model).Run(ast);
}

namespace {

struct ExportedScreen {
  std::string screen;
  capture::PageCapture page;
};

// States reachable from the initial one by clicks, long clicks and back
// presses, breadth first. Text input is not explored: its values are
// unbounded.
std::vector<SimState> ExploreStates(const AppModel& model) {
  std::vector<SimState> order;
  std::set<std::pair<std::string, std::map<std::string, std::string>>> seen;
  std::deque<SimState> queue;
  auto enqueue = [&](SimState s) {
    if (seen.insert({s.screen, s.vars}).second) queue.push_back(std::move(s));
  };
  enqueue(InitialState(model));
  while (!queue.empty() && order.size() < kMaxExploredStates) {
    SimState s = std::move(queue.front());
    queue.pop_front();
    const auto rendered = RenderScreen(model, s);
    for (ActionKind kind : {ActionKind::kClick, ActionKind::kLongClick}) {
      for (const auto& w : rendered) {
        SimState next = s;
        if (ApplyTransition(model, next, kind, &w, w.text.value_or(""), "")) {
          enqueue(std::move(next));
        }
      }
    }
    SimState back = s;
    if (ApplyTransition(model, back, ActionKind::kPressBack, nullptr, "", "")) {
      enqueue(std::move(back));
    }
    order.push_back(std::move(s));
  }
  return order;
}

std::vector<ExportedScreen> ExportScreens(const AppModel& model) {
  std::vector<SimState> states = ExploreStates(model);
  // Screens the walk never reached still get their initial rendering.
  std::set<std::string> reached;
  for (const auto& s : states) reached.insert(s.screen);
  for (const auto& [screen, widgets] : model.screens) {
    if (reached.count(screen)) continue;
    SimState s = InitialState(model);
    s.screen = screen;
    states.push_back(std::move(s));
  }

  std::vector<ExportedScreen> out;
  std::set<std::pair<std::string, std::string>> rendered_before;
  for (const auto& state : states) {
    auto rendered = RenderScreen(model, state);
    if (!rendered_before.insert({state.screen, capture::WriteViewHierarchy(rendered)}).second) {
      continue;
    }
    for (std::size_t i = 0; i < rendered.size(); ++i) {
      const int top = kTopOffset + static_cast<int>(i) * kRowHeight;
      rendered[i].bounds = {0, top, kScreenWidth, top + kRowHeight};
      rendered[i].node_index = static_cast<int>(i);
    }
    out.push_back({state.screen,
                   capture::BuildPageCapture(model.app_name, ActivityOf(model, state.screen),
                                             std::nullopt, std::move(rendered))});
  }
  return out;
}

}  // namespace

std::vector<capture::PageCapture> ExportCaptures(const AppModel& model) {
  std::vector<capture::PageCapture> out;
  for (auto& e : ExportScreens(model)) out.push_back(std::move(e.page));
  return out;
}

void WriteCaptureDirectories(const AppModel& model, const std::filesystem::path& dir) {
  const auto screens = ExportScreens(model);
  for (std::size_t i = 0; i < screens.size(); ++i) {
    const auto& cap = screens[i].page;
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "%03zu_", i);
    const auto sub = dir / (prefix + screens[i].screen);
    nlohmann::ordered_json meta = {{"app_name", cap.app_name},
                                   {"activity_name", cap.activity_name}};
    WriteFileAtomic(sub / "app.json", meta.dump(2) + "\n");
    WriteFileAtomic(sub / "dump.xml", capture::WriteViewHierarchy(cap.widgets));
  }
}

}  // namespace propforge::simulator
