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

#include <filesystem>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/evaluation/judge.h"
#include "propforge/grounding/annotation.h"
#include "propforge/grounding/store_builder.h"
#include "propforge/propdsl/parser.h"
#include "propforge/simulator/app_model.h"
#include "propforge/simulator/executor.h"

namespace propforge::evaluation {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

const fs::path kApp = fs::path(PROPFORGE_SUITE_DIR) / "amaze_like";
constexpr char kId[] = "com.amaze.filemanager:id/";

struct Fixture {
  ModelPair models;
  grounding::WidgetContextStore store;
};

const Fixture& Amaze() {
  static const Fixture f = [] {
    Fixture out{{simulator::LoadAppModel(kApp / "models/correct.json"),
                 simulator::LoadAppModel(kApp / "models/buggy.json")},
                {}};
    grounding::HeuristicAnnotator annotator;
    out.store = grounding::BuildContextStore(simulator::ExportCaptures(out.models.correct),
                                             annotator, 1);
    return out;
  }();
  return f;
}

propdsl::PropertyAST GroundTruth(const std::string& name) {
  return propdsl::ParseProperty(ReadFile(kApp / "ground_truth" / (name + ".prop")));
}

// Replaces the first occurrence of `from` in a ground truth's source.
propdsl::PropertyAST Mutate(const std::string& name, const std::string& from,
                            const std::string& to) {
  std::string src = ReadFile(kApp / "ground_truth" / (name + ".prop"));
  const auto pos = src.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  src.replace(pos, from.size(), to);
  return propdsl::ParseProperty(src);
}

CorrectnessReport JudgeAgainst(const std::string& name, const propdsl::PropertyAST& gen) {
  return Judge(Amaze().models, gen, GroundTruth(name), Amaze().store);
}

TEST(JudgeTest, GroundTruthAgainstItselfIsCorrect) {
  const auto r = JudgeAgainst("open_directory", GroundTruth("open_directory"));
  EXPECT_TRUE(r.correct);
  EXPECT_TRUE(r.behavioral_ok);
  EXPECT_TRUE(r.diff.Empty());
  EXPECT_EQ(r.symptom, FailureSymptom::kNone);
  EXPECT_EQ(r.verdicts.gt_correct.kind, simulator::VerdictKind::kPassed);
  EXPECT_EQ(r.verdicts.gt_buggy.kind, simulator::VerdictKind::kViolated);
}

TEST(JudgeTest, EquivalentSelectorsDoNotMatter) {
  // desc="Search" and the search id name the same widget.
  const auto gen = Mutate("search_files", "click(widget(desc=\"Search\"))",
                          std::string("click(widget(id=\"") + kId + "search\"))");
  EXPECT_TRUE(JudgeAgainst("search_files", gen).correct);

}

TEST(JudgeTest, ConsistentRenamingIsInvisible) {
  std::string src = ReadFile(kApp / "ground_truth/open_directory.prop");
  for (std::string::size_type p; (p = src.find("dir")) != std::string::npos;) {
    src.replace(p, 3, "chosen");
  }
  for (std::string::size_type p; (p = src.find("entries")) != std::string::npos;) {
    src.replace(p, 7, "rows");
  }
  EXPECT_TRUE(JudgeAgainst("open_directory", propdsl::ParseProperty(src)).correct);
}

TEST(JudgeTest, WrongWidgetInAnEventIsWidgetMismatch) {
  const auto gen = Mutate("sort_by_name", "click(widget(text=\"Name\"))",
                          "click(widget(text=\"Date\"))");
  const auto r = JudgeAgainst("sort_by_name", gen);
  EXPECT_FALSE(r.correct);
  EXPECT_EQ(r.symptom, FailureSymptom::kWidgetMismatch);
  bool found = false;
  for (const auto& e : r.diff.event_diff) found |= e.status == EventStatus::kWidgetMismatch;
  EXPECT_TRUE(found);
}

TEST(JudgeTest, WrongWidgetInAClauseIsWidgetMismatch) {
  const auto gen = Mutate("search_files", std::string(kId) + "search_result",
                          std::string(kId) + "current_path");
  const auto r = JudgeAgainst("search_files", gen);
  EXPECT_EQ(r.symptom, FailureSymptom::kWidgetMismatch);
  ASSERT_EQ(r.diff.widget_mismatches.size(), 1u);
  EXPECT_THAT(r.diff.widget_mismatches[0], HasSubstr("current_path"));
}

TEST(JudgeTest, DroppedEventIsIncompleteness) {
  const auto gen = Mutate("create_folder", "click(widget(text=\"OK\"))", "");
  const auto r = JudgeAgainst("create_folder", gen);
  EXPECT_EQ(r.symptom, FailureSymptom::kLogicIncompleteness);
  EXPECT_EQ(r.diff.event_diff.back().status, EventStatus::kMissing);
}

TEST(JudgeTest, ExtraAssertionIsRedundancy) {
  const auto gen = Mutate("create_folder", "  post {\n",
                          std::string("  post {\n    assert exists(widget(id=\"") + kId +
                              "fab\"))\n");
  const auto r = JudgeAgainst("create_folder", gen);
  EXPECT_EQ(r.symptom, FailureSymptom::kLogicRedundancy);
  EXPECT_EQ(r.diff.extra_post_clauses.size(), 1u);
}

TEST(JudgeTest, DroppedElseBranchIsIncompleteness) {
  const auto gen = Mutate("sort_by_name", " else {\n      press_back()\n    }", "");
  const auto r = JudgeAgainst("sort_by_name", gen);
  EXPECT_EQ(r.diff.branch_diff, BranchDiff::kMissingBranch);
  EXPECT_EQ(r.symptom, FailureSymptom::kLogicIncompleteness);
}

TEST(JudgeTest, ChangedActionIsSemanticDeviation) {
  const auto gen = Mutate("create_folder", "click(widget(text=\"OK\"))",
                          "long_click(widget(text=\"OK\"))");
  const auto r = JudgeAgainst("create_folder", gen);
  EXPECT_EQ(r.symptom, FailureSymptom::kSemanticDeviation);
  EXPECT_EQ(r.diff.event_diff.back().status, EventStatus::kActionMismatch);
}

TEST(JudgeTest, SameClausesCombinedDifferentlyIsSemanticDeviation) {
  const std::string pre_and = std::string("exists(widget(desc=\"Search\")) and exists(widget(id=\"") +
                              kId + "sort\"))";
  const std::string pre_or = std::string("exists(widget(desc=\"Search\")) or exists(widget(id=\"") +
                             kId + "sort\"))";
  const auto gt = Mutate("search_files", "exists(widget(desc=\"Search\"))", pre_and);
  const auto gen = Mutate("search_files", "exists(widget(desc=\"Search\"))", pre_or);
  const auto diff = StructuralCompare(gen, gt, Amaze().store);
  EXPECT_TRUE(diff.missing_pre_clauses.empty());
  ASSERT_EQ(diff.logic_mismatches.size(), 1u);
  EXPECT_EQ(ClassifyFailure(diff, true), FailureSymptom::kSemanticDeviation);
}

TEST(JudgeTest, BehaviorAloneCanFailAProperty) {
  // Structurally equal is not enough when the verdicts differ.
  EXPECT_EQ(ClassifyFailure(StructuralDiff{}, false), FailureSymptom::kSemanticDeviation);
  EXPECT_EQ(ClassifyFailure(StructuralDiff{}, true), FailureSymptom::kNone);
}

TEST(JudgeTest, MissingBuggyModelIsRejected) {
  ModelPair single{Amaze().models.correct, std::nullopt};
  try {
    BehavioralEquivalent(single, GroundTruth("open_directory"), GroundTruth("open_directory"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModelPairMissing);
  }
}

TEST(ReportTest, JsonAndMarkdownAggregate) {
  std::vector<ReportEntry> entries;
  entries.push_back({"good", JudgeAgainst("create_folder", GroundTruth("create_folder"))});
  entries.push_back({"bad", JudgeAgainst("create_folder",
                                         Mutate("create_folder", "click(widget(text=\"OK\"))", ""))});
  const auto doc = ReportToJson(entries);
  EXPECT_EQ(doc["total"], 2);
  EXPECT_EQ(doc["correct"], 1);
  EXPECT_DOUBLE_EQ(doc["accuracy"].get<double>(), 0.5);
  EXPECT_EQ(doc["properties"][1]["symptom"], "LogicIncompleteness");
  EXPECT_EQ(doc["properties"][1]["diff"]["event_mismatches"][0]["status"], "missing");
  const auto md = ReportToMarkdown(entries);
  EXPECT_THAT(md, HasSubstr("Accuracy: 1/2 (50.0%)"));
  EXPECT_THAT(md, HasSubstr("| bad |"));
}

}  // namespace
}  // namespace propforge::evaluation
