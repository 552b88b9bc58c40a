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

#include "propforge/evaluation/judge.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "propforge/common/error.h"
#include "propforge/common/text.h"
#include "propforge/grounding/matcher.h"
#include "propforge/propdsl/printer.h"

namespace propforge::evaluation {
namespace {

using propdsl::Expr;
using propdsl::ExprKind;
using propdsl::Stmt;

struct Atom {
  std::string key;      // canonical, used for comparison
  std::string masked;   // canonical with every widget replaced by "W"
  std::string display;  // as written
};

struct Event {
  std::string action;  // action name plus payload
  std::string target;  // widget equivalence key
  std::string display;
};

// Canonical forms of one property. Selectors become the set of store
// widgets they resolve to; variables become v1, v2, ... in binding order.
class Normalizer {
 public:
  explicit Normalizer(const grounding::WidgetContextStore& store) : store_(store) {}

  std::string SelectorKey(const propdsl::Selector& s) const {
    if (mask_) return "W";
    const auto uids = grounding::ResolveSelector(s, store_);
    if (uids.empty()) return "?" + propdsl::FormatSelector(s);
    return "W{" + Join(uids, ",") + "}";
  }

  std::string Var(const std::string& name) const {
    const auto it = names_.find(name);
    return it == names_.end() ? "$" + name : it->second;
  }

  void Bind(const std::string& name, const char* prefix) {
    names_[name] = prefix + std::to_string(++counter_);
  }

  std::string Masked(const Expr& e) const {
    mask_ = true;
    std::string out = Canonical(e);
    mask_ = false;
    return out;
  }

  std::string MaskedSelector(const propdsl::Selector& s) const {
    mask_ = true;
    std::string out = SelectorKey(s);
    mask_ = false;
    return out;
  }

  std::string TargetKey(const propdsl::Target& t) const {
    if (const auto* s = std::get_if<propdsl::Selector>(&t)) return SelectorKey(*s);
    return Var(std::get<propdsl::VarRef>(t).name);
  }

  std::string Canonical(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::kString: return QuoteString(e.value);
      case ExprKind::kNumber: return QuoteString(e.value);
      case ExprKind::kBool: return e.flag ? "true" : "false";
      case ExprKind::kVar: return Var(e.value);
      case ExprKind::kAttr:
        return "attr(" + TargetKey(e.target) + "," +
               std::string(propdsl::FieldName(e.field)) + ")";
      case ExprKind::kExists: return "exists(" + TargetKey(e.target) + ")";
      case ExprKind::kNot: return "not(" + Canonical(e.args[0]) + ")";
      case ExprKind::kAnd:
      case ExprKind::kOr: {
        std::vector<std::string> parts;
        for (const auto& a : e.args) parts.push_back(Canonical(a));
        std::sort(parts.begin(), parts.end());
        return std::string(propdsl::ExprKindName(e.kind)) + "(" + Join(parts, ",") + ")";
      }
      default:
        return std::string(propdsl::ExprKindName(e.kind)) + "(" +
               Canonical(e.args[0]) + "," + Canonical(e.args[1]) + ")";
    }
  }

  void Atoms(const Expr& e, bool negated, std::vector<Atom>& out) const {
    if (e.kind == ExprKind::kNot) {
      Atoms(e.args[0], !negated, out);
    } else if (e.kind == ExprKind::kAnd || e.kind == ExprKind::kOr) {
      for (const auto& a : e.args) Atoms(a, negated, out);
    } else {
      const std::string prefix = negated ? "not " : "";
      out.push_back({prefix + Canonical(e), prefix + Masked(e), prefix + propdsl::PrintExpr(e)});
    }
  }

 private:
  const grounding::WidgetContextStore& store_;
  std::map<std::string, std::string> names_;
  int counter_ = 0;
  mutable bool mask_ = false;
};

// Everything the comparison needs from one interaction scenario.
struct Flattened {
  std::vector<Event> events;
  std::vector<std::string> bindings;
  std::vector<std::string> masked_bindings;
  std::string shape;
  int branches = 0;
};

void Flatten(const std::vector<Stmt>& body, Normalizer& n, Flattened& out) {
  for (const auto& s : body) {
    if (const auto* let = std::get_if<propdsl::LetAll>(&s.node)) {
      n.Bind(let->var, "v");
      out.bindings.push_back("all(" + n.SelectorKey(let->selector) + ")");
      out.masked_bindings.push_back("all(" + n.MaskedSelector(let->selector) + ")");
    } else if (const auto* pick = std::get_if<propdsl::LetPick>(&s.node)) {
      const std::string source = n.Var(pick->source);
      n.Bind(pick->element, "e");
      const std::string pred = n.Canonical(pick->predicate);
      const std::string masked = n.Masked(pick->predicate);
      n.Bind(pick->var, "v");
      out.bindings.push_back("pick(" + source + "," + pred + ")");
      out.masked_bindings.push_back("pick(" + source + "," + masked + ")");
    } else if (const auto* d = std::get_if<propdsl::Do>(&s.node)) {
      const auto& a = d->action;
      std::string action(a.kind == propdsl::ActionKind::kUnknown
                             ? a.name
                             : propdsl::ActionName(a.kind));
      if (a.text) action += ":" + QuoteString(*a.text);
      if (a.duration_ms) action += ":" + std::to_string(*a.duration_ms);
      out.events.push_back({action, a.target ? n.TargetKey(*a.target) : "",
                            propdsl::PrintAction(a)});
    } else if (const auto* branch = std::get_if<propdsl::If>(&s.node)) {
      ++out.branches;
      out.shape += "if(" + n.Canonical(branch->condition) + "){";
      Flatten(branch->then_body, n, out);
      out.shape += "}";
      if (branch->else_body) {
        ++out.branches;
        out.shape += "else{";
        Flatten(*branch->else_body, n, out);
        out.shape += "}";
      }
    }
  }
}

// Multiset difference by key: the entries of `a` not covered by `b`.
std::vector<Atom> Minus(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  std::map<std::string, int> budget;
  for (const auto& x : b) ++budget[x.key];
  std::vector<Atom> out;
  for (const auto& x : a) {
    if (budget[x.key] > 0) {
      --budget[x.key];
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<std::string> Displays(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.display);
  return out;
}

// Pairs of unmatched clauses that agree once widgets are masked, i.e. the
// same check applied to a different widget.
void PairWidgetMismatches(const std::vector<Atom>& extra, const std::vector<Atom>& missing,
                          std::vector<std::string>& out) {
  std::vector<bool> used(missing.size(), false);
  for (const auto& x : extra) {
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (!used[i] && missing[i].masked == x.masked) {
        used[i] = true;
        out.push_back(x.display + " instead of " + missing[i].display);
        break;
      }
    }
  }
}

std::vector<EventPair> AlignEvents(const std::vector<Event>& gen,
                                   const std::vector<Event>& gt) {
  const std::size_t n = gen.size(), m = gt.size();
  auto same = [&](std::size_t i, std::size_t j) {
    return gen[i].action == gt[j].action && gen[i].target == gt[j].target;
  };
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = same(i, j) ? lcs[i + 1][j + 1] + 1
                             : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<EventPair> out;
  std::vector<std::size_t> gap_gen, gap_gt;
  auto flush = [&] {
    const std::size_t k = std::min(gap_gen.size(), gap_gt.size());
    for (std::size_t p = 0; p < k; ++p) {
      const Event& a = gen[gap_gen[p]];
      const Event& b = gt[gap_gt[p]];
      const EventStatus status = a.target == b.target ? EventStatus::kActionMismatch
                                                      : EventStatus::kWidgetMismatch;
      out.push_back({a.display, b.display, status});
    }
    for (std::size_t p = k; p < gap_gen.size(); ++p) {
      out.push_back({gen[gap_gen[p]].display, "", EventStatus::kExtra});
    }
    for (std::size_t p = k; p < gap_gt.size(); ++p) {
      out.push_back({"", gt[gap_gt[p]].display, EventStatus::kMissing});
    }
    gap_gen.clear();
    gap_gt.clear();
  };
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && same(i, j) && lcs[i][j] == lcs[i + 1][j + 1] + 1) {
      flush();
      out.push_back({gen[i].display, gt[j].display, EventStatus::kMatch});
      ++i;
      ++j;
    } else if (j >= m || (i < n && lcs[i + 1][j] >= lcs[i][j + 1])) {
      gap_gen.push_back(i++);
    } else {
      gap_gt.push_back(j++);
    }
  }
  flush();
  return out;
}

struct Normalized {
  std::vector<Atom> pre;
  std::string pre_shape;
  std::vector<Atom> post;
  std::vector<std::string> post_shape;
  Flattened body;
};

Normalized Normalize(const propdsl::PropertyAST& ast,
                     const grounding::WidgetContextStore& store) {
  Normalizer n(store);
  Normalized out;
  n.Atoms(ast.precondition, false, out.pre);
  out.pre_shape = n.Canonical(ast.precondition);
  Flatten(ast.interaction, n, out.body);
  for (const auto& q : ast.postcondition) {
    n.Atoms(q, false, out.post);
    out.post_shape.push_back(n.Canonical(q));
  }
  std::sort(out.post_shape.begin(), out.post_shape.end());
  return out;
}


}  // namespace

std::string_view EventStatusName(EventStatus s) {
  switch (s) {
    case EventStatus::kMatch: return "match";
    case EventStatus::kWidgetMismatch: return "widget_mismatch";
    case EventStatus::kActionMismatch: return "action_mismatch";
    case EventStatus::kMissing: return "missing";
    case EventStatus::kExtra: return "extra";
  }
  return "?";
}

std::string_view BranchDiffName(BranchDiff b) {
  switch (b) {
    case BranchDiff::kEqual: return "equal";
    case BranchDiff::kMissingBranch: return "missing_branch";
    case BranchDiff::kExtraBranch: return "extra_branch";
    case BranchDiff::kChangedBranch: return "changed_branch";
  }
  return "?";
}

std::string_view SymptomName(FailureSymptom s) {
  switch (s) {
    case FailureSymptom::kNone: return "None";
    case FailureSymptom::kWidgetMismatch: return "WidgetMismatch";
    case FailureSymptom::kLogicIncompleteness: return "LogicIncompleteness";
    case FailureSymptom::kLogicRedundancy: return "LogicRedundancy";
    case FailureSymptom::kSemanticDeviation: return "SemanticDeviation";
  }
  return "?";
}

bool StructuralDiff::Empty() const {
  return missing_pre_clauses.empty() && extra_pre_clauses.empty() &&
         missing_post_clauses.empty() && extra_post_clauses.empty() &&
         branch_diff == BranchDiff::kEqual && logic_mismatches.empty() &&
         widget_mismatches.empty() &&
         std::all_of(event_diff.begin(), event_diff.end(), [](const EventPair& p) {
           return p.status == EventStatus::kMatch;
         });
}

bool BehavioralEquivalent(const ModelPair& models, const propdsl::PropertyAST& gen,
                          const propdsl::PropertyAST& gt, BehaviorVerdicts* verdicts) {
  if (!models.buggy) {
    throw Error(ErrorCode::kModelPairMissing, "no seeded-bug model supplied");
  }
  BehaviorVerdicts v;
  v.gen_correct = simulator::ExecuteProperty(models.correct, gen).verdict;
  v.gen_buggy = simulator::ExecuteProperty(*models.buggy, gen).verdict;
  v.gt_correct = simulator::ExecuteProperty(models.correct, gt).verdict;
  v.gt_buggy = simulator::ExecuteProperty(*models.buggy, gt).verdict;
  if (verdicts) *verdicts = v;
  return v.gen_correct.kind == v.gt_correct.kind && v.gen_buggy.kind == v.gt_buggy.kind;
}

StructuralDiff StructuralCompare(const propdsl::PropertyAST& gen,
                                 const propdsl::PropertyAST& gt,
                                 const grounding::WidgetContextStore& store) {
  const Normalized a = Normalize(gen, store);
  const Normalized b = Normalize(gt, store);
  StructuralDiff d;
  const auto missing_pre = Minus(b.pre, a.pre);
  const auto extra_pre = Minus(a.pre, b.pre);
  const auto missing_post = Minus(b.post, a.post);
  const auto extra_post = Minus(a.post, b.post);
  d.missing_pre_clauses = Displays(missing_pre);
  d.extra_pre_clauses = Displays(extra_pre);
  d.missing_post_clauses = Displays(missing_post);
  d.extra_post_clauses = Displays(extra_post);
  PairWidgetMismatches(extra_pre, missing_pre, d.widget_mismatches);
  PairWidgetMismatches(extra_post, missing_post, d.widget_mismatches);
  if (d.missing_pre_clauses.empty() && d.extra_pre_clauses.empty() &&
      a.pre_shape != b.pre_shape) {
    d.logic_mismatches.push_back("precondition combines its clauses differently");
  }
  if (d.missing_post_clauses.empty() && d.extra_post_clauses.empty() &&
      a.post_shape != b.post_shape) {
    d.logic_mismatches.push_back("assertions combine their clauses differently");
  }
  if (a.body.bindings != b.body.bindings) {
    if (a.body.masked_bindings == b.body.masked_bindings) {
      d.widget_mismatches.push_back("list bindings select different widgets");
    } else {
      d.logic_mismatches.push_back("list or pick bindings differ");
    }
  }
  d.event_diff = AlignEvents(a.body.events, b.body.events);
  if (a.body.branches < b.body.branches) {
    d.branch_diff = BranchDiff::kMissingBranch;
  } else if (a.body.branches > b.body.branches) {
    d.branch_diff = BranchDiff::kExtraBranch;
  } else if (a.body.shape != b.body.shape) {
    d.branch_diff = BranchDiff::kChangedBranch;
  }
  return d;
}

FailureSymptom ClassifyFailure(const StructuralDiff& diff, bool behavioral_ok) {
  auto any = [&](EventStatus s) {
    return std::any_of(diff.event_diff.begin(), diff.event_diff.end(),
                       [s](const EventPair& p) { return p.status == s; });
  };
  if (any(EventStatus::kWidgetMismatch) || !diff.widget_mismatches.empty()) {
    return FailureSymptom::kWidgetMismatch;
  }
  if (!diff.missing_pre_clauses.empty() || !diff.missing_post_clauses.empty() ||
      any(EventStatus::kMissing) || diff.branch_diff == BranchDiff::kMissingBranch) {
    return FailureSymptom::kLogicIncompleteness;
  }
  if (!diff.extra_pre_clauses.empty() || !diff.extra_post_clauses.empty() ||
      any(EventStatus::kExtra) || diff.branch_diff == BranchDiff::kExtraBranch) {
    return FailureSymptom::kLogicRedundancy;
  }
  if (!diff.Empty() || !behavioral_ok) return FailureSymptom::kSemanticDeviation;
  return FailureSymptom::kNone;
}

CorrectnessReport Judge(const ModelPair& models, const propdsl::PropertyAST& gen,
                        const propdsl::PropertyAST& gt,
                        const grounding::WidgetContextStore& store) {
  CorrectnessReport r;
  r.behavioral_ok = BehavioralEquivalent(models, gen, gt, &r.verdicts);
  r.diff = StructuralCompare(gen, gt, store);
  r.symptom = ClassifyFailure(r.diff, r.behavioral_ok);
  r.correct = r.behavioral_ok && r.diff.Empty();
  return r;
}

nlohmann::ordered_json ReportToJson(const std::vector<ReportEntry>& entries) {
  using nlohmann::ordered_json;
  ordered_json props = ordered_json::array();
  int correct = 0;
  for (const auto& e : entries) {
    const auto& r = e.report;
    correct += r.correct ? 1 : 0;
    auto verdict = [](const simulator::Verdict& v) {
      return std::string(simulator::VerdictName(v.kind));
    };
    ordered_json events = ordered_json::array();
    for (const auto& p : r.diff.event_diff) {
      if (p.status == EventStatus::kMatch) continue;
      events.push_back({{"status", EventStatusName(p.status)},
                        {"generated", p.generated},
                        {"ground_truth", p.ground_truth}});
    }
    props.push_back(
        {{"name", e.name},
         {"correct", r.correct},
         {"behavioral_ok", r.behavioral_ok},
         {"verdicts",
          {{"generated_on_correct", verdict(r.verdicts.gen_correct)},
           {"generated_on_buggy", verdict(r.verdicts.gen_buggy)},
           {"ground_truth_on_correct", verdict(r.verdicts.gt_correct)},
           {"ground_truth_on_buggy", verdict(r.verdicts.gt_buggy)}}},
         {"symptom", SymptomName(r.symptom)},
         {"diff",
          {{"missing_pre_clauses", r.diff.missing_pre_clauses},
           {"extra_pre_clauses", r.diff.extra_pre_clauses},
           {"missing_post_clauses", r.diff.missing_post_clauses},
           {"extra_post_clauses", r.diff.extra_post_clauses},
           {"event_mismatches", events},
           {"branch_diff", BranchDiffName(r.diff.branch_diff)},
           {"logic_mismatches", r.diff.logic_mismatches},
           {"widget_mismatches", r.diff.widget_mismatches}}}});
  }
  const int total = static_cast<int>(entries.size());
  return {{"total", total},
          {"correct", correct},
          {"accuracy", total == 0 ? 0.0 : static_cast<double>(correct) / total},
          {"properties", props}};
}

std::string ReportToMarkdown(const std::vector<ReportEntry>& entries) {
  const auto doc = ReportToJson(entries);
  std::string out =
      "| Property | Correct | Generated (correct / buggy) | Ground truth (correct / "
      "buggy) | Symptom |\n|---|---|---|---|---|\n";
  for (const auto& p : doc["properties"]) {
    const auto& v = p["verdicts"];
    out += "| " + p["name"].get<std::string>() + " | " +
           (p["correct"].get<bool>() ? "yes" : "no") + " | " +
           v["generated_on_correct"].get<std::string>() + " / " +
           v["generated_on_buggy"].get<std::string>() + " | " +
           v["ground_truth_on_correct"].get<std::string>() + " / " +
           v["ground_truth_on_buggy"].get<std::string>() + " | " +
           p["symptom"].get<std::string>() + " |\n";
  }
  char acc[32];
  std::snprintf(acc, sizeof(acc), "%.1f%%", 100.0 * doc["accuracy"].get<double>());
  out += "\nAccuracy: " + std::to_string(doc["correct"].get<int>()) + "/" +
         std::to_string(doc["total"].get<int>()) + " (" + acc + ")\n";
  return out;
}

}  // namespace propforge::evaluation
