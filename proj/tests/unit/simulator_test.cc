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
#include <nlohmann/json.hpp>

#include "propforge/capture/page_capture.h"
#include "propforge/common/error.h"
#include "propforge/propdsl/parser.h"
#include "propforge/simulator/app_model.h"
#include "propforge/simulator/executor.h"

namespace propforge::simulator {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using ::testing::HasSubstr;

ErrorCode CodeOf(const json& doc) {
  try {
    AppModelFromJson(doc);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "model accepted: " << doc.dump();
  return ErrorCode::kIo;
}

// Counter app: a list screen with two rows, an editor and a detail screen.
json CounterModel() {
  return json::parse(R"json({
    "app": "Counter",
    "initial": "list",
    "state": {"count": "0", "title": "", "name": ""},
    "activities": {"list": "app.List"},
    "screens": {
      "list": [
        {"id": "app:id/row", "text": "Alpha", "class": "TextView", "clickable": true},
        {"id": "app:id/row", "text": "Beta", "class": "TextView", "clickable": true},
        {"id": "app:id/counter", "text_var": "count", "class": "TextView"},
        {"id": "app:id/plus", "desc": "Add one", "class": "ImageButton", "clickable": true},
        {"id": "app:id/edit", "desc": "Edit", "class": "ImageButton", "clickable": true}
      ],
      "detail": [
        {"id": "app:id/title", "text_var": "title", "class": "TextView"}
      ],
      "editor": [
        {"id": "app:id/name", "text_var": "name", "class": "EditText", "clickable": true},
        {"id": "app:id/done", "text": "Done", "class": "Button", "clickable": true}
      ]
    },
    "transitions": [
      {"screen": "list", "widget": {"id": "app:id/row"}, "action": "click",
       "effects": [{"set": {"var": "title", "value": "Row $text (${count})"}}, {"goto": "detail"}]},
      {"screen": "list", "widget": {"desc": "Add one"}, "action": "click",
       "effects": [{"set": {"var": "count", "value": "1"}}]},
      {"screen": "list", "widget": {"id": "app:id/edit"}, "action": "click",
       "effects": [{"goto": "editor"}]},
      {"screen": "editor", "widget": {"id": "app:id/name"}, "action": "set_text",
       "effects": [{"set": {"var": "title", "value": "Hello $input"}}]},
      {"screen": "editor", "widget": {"text": "Done"}, "action": "click",
       "effects": [{"goto": "detail"}]},
      {"screen": "detail", "action": "press_back", "effects": [{"goto": "list"}]}
    ]
  })json");
}

RunResult RunCounter(const std::string& run, const std::string& post,
              const std::string& pre = "exists(widget(id=\"app:id/row\"))") {
  const auto model = AppModelFromJson(CounterModel());
  return ExecuteProperty(model, propdsl::ParseProperty("property t {\n pre { " + pre +
                                                       " }\n run {\n" + run +
                                                       "\n }\n post {\n" + post + "\n }\n}\n"));
}

// ---------------------------------------------------------------- schema

TEST(AppModelTest, LoadsScreensStateAndActivities) {
  const auto m = AppModelFromJson(CounterModel());
  EXPECT_EQ(m.app_name, "Counter");
  EXPECT_EQ(m.initial_screen, "list");
  EXPECT_EQ(m.screens.size(), 3u);
  EXPECT_EQ(m.transitions.size(), 6u);
  EXPECT_EQ(ActivityOf(m, "list"), "app.List");
  EXPECT_EQ(ActivityOf(m, "detail"), "detail");
}

TEST(AppModelTest, StructuralProblemsAreSchemaErrors) {
  auto no_screens = CounterModel();
  no_screens.erase("screens");
  EXPECT_EQ(CodeOf(no_screens), ErrorCode::kSchemaError);

  auto no_class = CounterModel();
  no_class["screens"]["detail"][0].erase("class");
  EXPECT_EQ(CodeOf(no_class), ErrorCode::kSchemaError);

  auto wait_action = CounterModel();
  wait_action["transitions"][0]["action"] = "wait";
  EXPECT_EQ(CodeOf(wait_action), ErrorCode::kSchemaError);

  auto back_with_widget = CounterModel();
  back_with_widget["transitions"][5]["widget"] = {{"id", "app:id/title"}};
  EXPECT_EQ(CodeOf(back_with_widget), ErrorCode::kSchemaError);

  auto bad_effect = CounterModel();
  bad_effect["transitions"][0]["effects"] = json::array({{{"teleport", "x"}}});
  EXPECT_EQ(CodeOf(bad_effect), ErrorCode::kSchemaError);
}

TEST(AppModelTest, UnknownNamesAreDanglingReferences) {
  auto initial = CounterModel();
  initial["initial"] = "nowhere";
  EXPECT_EQ(CodeOf(initial), ErrorCode::kDanglingReference);

  auto target = CounterModel();
  target["transitions"][2]["effects"][0]["goto"] = "nowhere";
  EXPECT_EQ(CodeOf(target), ErrorCode::kDanglingReference);

  auto var = CounterModel();
  var["transitions"][1]["effects"][0]["set"]["var"] = "missing";
  EXPECT_EQ(CodeOf(var), ErrorCode::kDanglingReference);

  auto text_var = CounterModel();
  text_var["screens"]["detail"][0]["text_var"] = "missing";
  EXPECT_EQ(CodeOf(text_var), ErrorCode::kDanglingReference);

  auto key = CounterModel();
  key["transitions"][1]["widget"] = {{"desc", "Subtract one"}};
  EXPECT_EQ(CodeOf(key), ErrorCode::kDanglingReference);
}

TEST(AppModelTest, TextKeysMayTargetDynamicWidgets) {
  auto m = CounterModel();
  m["transitions"].push_back(
      {{"screen", "detail"}, {"widget", {{"text", "Row Alpha (0)"}}}, {"action", "click"}});
  EXPECT_NO_THROW(AppModelFromJson(m));
}

// ---------------------------------------------------------------- execution

TEST(ExecutorTest, PassesWhenAssertionsHold) {
  const auto r = RunCounter("click(widget(text=\"Beta\"))",
                     "assert equals(attr(widget(id=\"app:id/title\"), text), \"Row Beta (0)\")");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
  ASSERT_EQ(r.trace.events.size(), 1u);
  EXPECT_EQ(r.trace.events[0].widget, "list[1]");
  EXPECT_EQ(r.trace.events[0].screen_before, "list");
  EXPECT_EQ(r.trace.events[0].screen_after, "detail");
  ASSERT_EQ(r.trace.assertion_results.size(), 1u);
  EXPECT_TRUE(r.trace.assertion_results[0].value);
}

TEST(ExecutorTest, StateVariablesFlowIntoLaterEffects) {
  const auto r = RunCounter("click(widget(desc=\"Add one\"))\n click(widget(text=\"Alpha\"))",
                     "assert equals(attr(widget(id=\"app:id/title\"), text), \"Row Alpha (1)\")");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
}

TEST(ExecutorTest, FailedAssertionIsViolation) {
  const auto r = RunCounter("click(widget(text=\"Alpha\"))",
                     "assert exists(widget(id=\"app:id/row\"))");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kViolated);
  EXPECT_FALSE(r.trace.assertion_results[0].value);
}

TEST(ExecutorTest, FalsePreconditionSkipsTheRun) {
  const auto r = RunCounter("click(widget(text=\"Alpha\"))", "", "exists(widget(text=\"Gamma\"))");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPreconditionUnsatisfied);
  EXPECT_TRUE(r.trace.events.empty());
}

TEST(ExecutorTest, ActingOnAMissingWidgetIsAnExecutionError) {
  const auto r = RunCounter("click(widget(text=\"Gamma\"))", "");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kExecutionError);
  EXPECT_THAT(r.verdict.message, HasSubstr("Gamma"));
}

TEST(ExecutorTest, PickBindsFirstSatisfyingElement) {
  const auto r = RunCounter(
      "let rows = all widget(id=\"app:id/row\")\n"
      "let b = pick r in rows where startswith(attr(r, text), \"B\")\n click(b)",
      "assert contains(attr(widget(id=\"app:id/title\"), text), attr(b, text))");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
  EXPECT_EQ(r.trace.events[0].widget, "list[1]");
}

TEST(ExecutorTest, EmptyPickIsAnExecutionError) {
  const auto r = RunCounter(
      "let rows = all widget(id=\"app:id/row\")\n"
      "let z = pick r in rows where equals(attr(r, text), \"Zeta\")",
      "");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kExecutionError);
}

TEST(ExecutorTest, BoundWidgetsKeepTheirSnapshotButLeaveTheScreen) {
  const auto r = RunCounter(
      "let rows = all widget(id=\"app:id/row\")\n"
      "let a = pick r in rows where equals(attr(r, text), \"Alpha\")\n click(a)",
      "assert equals(attr(a, text), \"Alpha\")\n assert not exists(a)");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
}

TEST(ExecutorTest, ActingOnAnOffscreenVariableIsAnExecutionError) {
  const auto r = RunCounter(
      "let rows = all widget(id=\"app:id/row\")\n"
      "let a = pick r in rows where equals(attr(r, text), \"Alpha\")\n click(a)\n click(a)",
      "");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kExecutionError);
}

TEST(ExecutorTest, SetTextWritesTheFieldAndFiresTransitions) {
  const auto r = RunCounter(
      "click(widget(desc=\"Edit\"))\n set_text(widget(id=\"app:id/name\"), \"Bob\")",
      "assert equals(attr(widget(id=\"app:id/name\"), text), \"Bob\")");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
  const auto r2 = RunCounter(
      "click(widget(desc=\"Edit\"))\n set_text(widget(id=\"app:id/name\"), \"Bob\")\n"
      " click(widget(text=\"Done\"))",
      "assert equals(attr(widget(id=\"app:id/title\"), text), \"Hello Bob\")");
  EXPECT_EQ(r2.verdict.kind, VerdictKind::kPassed);
}

TEST(ExecutorTest, UnmatchedActionsAreNoOpsAndWaitAdvancesTheClock) {
  const auto r = RunCounter("long_click(widget(text=\"Alpha\"))\n press_back()\n wait(1500)",
                     "assert exists(widget(text=\"Alpha\"))");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
  ASSERT_EQ(r.trace.events.size(), 3u);
  EXPECT_EQ(r.trace.events[0].screen_after, "list");
  EXPECT_EQ(r.trace.clock_ms, 1500);
}

TEST(ExecutorTest, BranchesFollowTheCurrentScreen) {
  const std::string body =
      "click(widget(text=\"Alpha\"))\n"
      " if exists(widget(id=\"app:id/title\")) {\n press_back()\n } else {\n"
      " click(widget(desc=\"Add one\"))\n }";
  const auto r = RunCounter(body, "assert exists(widget(id=\"app:id/row\"))");
  EXPECT_EQ(r.verdict.kind, VerdictKind::kPassed);
  EXPECT_EQ(r.trace.events.back().action, propdsl::ActionKind::kPressBack);
}

TEST(ExecutorTest, RunsDoNotShareState) {
  const auto model = AppModelFromJson(CounterModel());
  const auto ast = propdsl::ParseProperty(
      "property t { pre { exists(widget(desc=\"Add one\")) } run { click(widget(desc=\"Add "
      "one\")) } post { assert equals(attr(widget(id=\"app:id/counter\"), text), \"1\") } }");
  const auto first = ExecuteProperty(model, ast);
  const auto second = ExecuteProperty(model, ast);
  EXPECT_EQ(first.verdict, second.verdict);
  EXPECT_EQ(first.trace, second.trace);
}

TEST(ExecutorTest, SelectorEvaluationSeesDynamicText) {
  const auto model = AppModelFromJson(CounterModel());
  auto state = InitialState(model);
  propdsl::Selector counter{{{propdsl::Field::kText, "0"}}, propdsl::MatchMode::kExact, {}};
  EXPECT_EQ(EvaluateSelector(model, state, counter).size(), 1u);
  state.vars["count"] = "";
  EXPECT_TRUE(EvaluateSelector(model, state, counter).empty());
  EXPECT_FALSE(RenderScreen(model, state)[2].text.has_value());
}

// ---------------------------------------------------------------- export

TEST(ExportTest, ExploresReachableRenderings) {
  // Breadth first from the list: both rows, the counter and the editor,
  // then whatever those states lead to. Renderings already seen are
  // skipped; the list only shows the count, the detail only the title.
  const auto model = AppModelFromJson(CounterModel());
  const auto caps = ExportCaptures(model);
  ASSERT_EQ(caps.size(), 8u);
  const std::vector<std::pair<std::string, std::optional<std::string>>> expected = {
      {"app.List", "0"},           {"detail", "Row Alpha (0)"}, {"detail", "Row Beta (0)"},
      {"app.List", "1"},           {"editor", std::nullopt},    {"detail", "Row Alpha (1)"},
      {"detail", "Row Beta (1)"},  {"detail", std::nullopt},
  };
  for (std::size_t i = 0; i < caps.size(); ++i) {
    EXPECT_EQ(caps[i].activity_name, expected[i].first) << i;
    const auto& shown = caps[i].activity_name == "app.List" ? caps[i].widgets[2].text
                                                            : caps[i].widgets[0].text;
    EXPECT_EQ(shown, expected[i].second) << i;
  }
}

TEST(ExportTest, RowsGetSyntheticBounds) {
  const auto caps = ExportCaptures(AppModelFromJson(CounterModel()));
  EXPECT_EQ(caps[1].widgets[0].bounds.top, 200);
  EXPECT_EQ(caps[0].widgets[1].bounds.top, 320);
  EXPECT_EQ(caps[0].widgets[1].bounds.right, 1080);
  EXPECT_EQ(caps[0].widgets[4].node_index, 4);
}

TEST(ExportTest, UnreachableScreensStillExported) {
  auto doc = CounterModel();
  doc["screens"]["orphan"] = json::parse(R"([{"id": "app:id/o", "text": "O", "class": "V"}])");
  const auto caps = ExportCaptures(AppModelFromJson(doc));
  ASSERT_EQ(caps.size(), 9u);
  EXPECT_EQ(caps.back().activity_name, "orphan");
}

TEST(ExportTest, WrittenDirectoriesLoadBack) {
  const auto model = AppModelFromJson(CounterModel());
  const fs::path dir = fs::temp_directory_path() / "pf_sim_export_test";
  fs::remove_all(dir);
  WriteCaptureDirectories(model, dir);
  const auto loaded = capture::LoadCaptureDirectory(dir / "003_list");
  EXPECT_EQ(loaded.app_name, "Counter");
  EXPECT_EQ(loaded.activity_name, "app.List");
  EXPECT_EQ(loaded.widgets.size(), 5u);
  EXPECT_EQ(loaded.capture_id, ExportCaptures(model)[3].capture_id);
  EXPECT_TRUE(fs::exists(dir / "007_detail"));
  fs::remove_all(dir);
}

TEST(SuiteModelTest, EveryBundledModelLoads) {
  for (const auto& app : fs::directory_iterator(PROPFORGE_SUITE_DIR)) {
    if (!app.is_directory()) continue;
    for (const char* name : {"correct.json", "buggy.json"}) {
      EXPECT_NO_THROW(LoadAppModel(app.path() / "models" / name)) << app.path();
    }
  }
}

}  // namespace
}  // namespace propforge::simulator
