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

// Judges a generated property against a ground truth: behaviorally, by
// running both on a correct and a seeded-bug app model, and structurally,
// by comparing clauses, events and branches up to widget equivalence.
#ifndef PROPFORGE_EVALUATION_JUDGE_H_
#define PROPFORGE_EVALUATION_JUDGE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/grounding/context_store.h"
#include "propforge/propdsl/ast.h"
#include "propforge/simulator/app_model.h"
#include "propforge/simulator/executor.h"

namespace propforge::evaluation {

enum class EventStatus { kMatch, kWidgetMismatch, kActionMismatch, kMissing, kExtra };
enum class BranchDiff { kEqual, kMissingBranch, kExtraBranch, kChangedBranch };

std::string_view EventStatusName(EventStatus s);
std::string_view BranchDiffName(BranchDiff b);

struct EventPair {
  std::string generated;     // printed action, empty when missing
  std::string ground_truth;  // printed action, empty when extra
  EventStatus status = EventStatus::kMatch;

  bool operator==(const EventPair&) const = default;
};

struct StructuralDiff {
  std::vector<std::string> missing_pre_clauses;
  std::vector<std::string> extra_pre_clauses;
  std::vector<std::string> missing_post_clauses;
  std::vector<std::string> extra_post_clauses;
  std::vector<EventPair> event_diff;  // full alignment, matches included
  BranchDiff branch_diff = BranchDiff::kEqual;
  // Same clauses combined differently, or differing list/pick bindings.
  std::vector<std::string> logic_mismatches;
  // Clauses or bindings that only differ in the widget they name.
  std::vector<std::string> widget_mismatches;

  bool Empty() const;
  bool operator==(const StructuralDiff&) const = default;
};

enum class FailureSymptom {
  kNone,
  kWidgetMismatch,
  kLogicIncompleteness,
  kLogicRedundancy,
  kSemanticDeviation,
};

std::string_view SymptomName(FailureSymptom s);

struct ModelPair {
  simulator::AppModel correct;
  std::optional<simulator::AppModel> buggy;
};

struct BehaviorVerdicts {
  simulator::Verdict gen_correct;
  simulator::Verdict gen_buggy;
  simulator::Verdict gt_correct;
  simulator::Verdict gt_buggy;
};

// True iff both properties get the same verdict kind on the correct model
// and on the buggy model. Throws ModelPairMissing without a buggy model.
bool BehavioralEquivalent(const ModelPair& models, const propdsl::PropertyAST& gen,
                          const propdsl::PropertyAST& gt,
                          BehaviorVerdicts* verdicts = nullptr);

// Clauses are compared as multisets of atoms, selectors by the widgets they
// resolve to in the store, variables by binding order. Events are aligned by
// longest common subsequence; unaligned events inside the same gap are
// paired up as mismatches.
StructuralDiff StructuralCompare(const propdsl::PropertyAST& gen,
                                 const propdsl::PropertyAST& gt,
                                 const grounding::WidgetContextStore& store);

// Priority: widget mismatch, then missing logic, then extra logic, then any
// other difference or behavioral failure.
FailureSymptom ClassifyFailure(const StructuralDiff& diff, bool behavioral_ok);

struct CorrectnessReport {
  bool behavioral_ok = false;
  BehaviorVerdicts verdicts;
  StructuralDiff diff;
  FailureSymptom symptom = FailureSymptom::kNone;
  bool correct = false;
};

CorrectnessReport Judge(const ModelPair& models, const propdsl::PropertyAST& gen,
                        const propdsl::PropertyAST& gt,
                        const grounding::WidgetContextStore& store);

struct ReportEntry {
  std::string name;
  CorrectnessReport report;
};

// {"total", "correct", "accuracy", "properties": [{name, correct, verdicts,
// symptom, diff}]}
nlohmann::ordered_json ReportToJson(const std::vector<ReportEntry>& entries);
std::string ReportToMarkdown(const std::vector<ReportEntry>& entries);

}  // namespace propforge::evaluation

#endif  // PROPFORGE_EVALUATION_JUDGE_H_
