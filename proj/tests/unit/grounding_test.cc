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

#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "propforge/capture/page_capture.h"
#include "propforge/capture/view_hierarchy.h"
#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/grounding/annotation.h"
#include "propforge/grounding/context_store.h"
#include "propforge/grounding/matcher.h"
#include "propforge/grounding/store_builder.h"
#include "propforge/llm/provider.h"
#include "support/golden_inputs.h"

namespace propforge::grounding {
namespace {

using capture::PageCapture;
using capture::WidgetAttributes;
using propdsl::Field;
using propdsl::MatchMode;
using propdsl::Selector;
using ::testing::HasSubstr;

WidgetAttributes Widget(std::optional<std::string> text,
                        std::optional<std::string> id,
                        std::optional<std::string> desc, std::string cls,
                        bool clickable, int node_index) {
  WidgetAttributes w;
  w.text = std::move(text);
  w.resource_id = std::move(id);
  w.content_description = std::move(desc);
  w.class_name = std::move(cls);
  w.clickable = clickable;
  w.bounds = {0, node_index * 10, 100, node_index * 10 + 10};
  w.node_index = node_index;
  return w;
}

EnrichedWidget Enriched(WidgetAttributes w, std::string label,
                        std::string functionality) {
  EnrichedWidget e;
  e.source_capture = "cap0";
  e.uid = WidgetUid(e.source_capture, w.node_index);
  e.attributes = std::move(w);
  e.annotation = WidgetAnnotation{std::move(label), std::move(functionality)};
  return e;
}

WidgetContextStore MenuStore() {
  WidgetContextStore store;
  store.app_name = "Podcasts";
  store.widgets.push_back(Enriched(
      Widget("Settings", "app.settings", std::nullopt,
             "android.widget.TextView", true, 0),
      "Settings menu item", "Opens the settings screen"));
  store.widgets.push_back(Enriched(
      Widget("Search", "com.pod:id/search_btn", std::nullopt,
             "android.widget.ImageButton", true, 1),
      "Search button", "Opens the search bar"));
  store.widgets.push_back(Enriched(
      Widget("Sort", "com.pod:id/sort", "Sort episodes",
             "android.widget.ImageButton", true, 2),
      "Sort option", "Changes the episode order"));
  for (const auto& w : store.widgets) {
    store.dedup_index[DedupKey(w.attributes)] = w.uid;
  }
  return store;
}

Selector Sel(Field f, std::string v, MatchMode mode = MatchMode::kExact) {
  return Selector{{{f, std::move(v)}}, mode, {}};
}

std::vector<AnnotationDemo> Demos() {
  return LoadAnnotationDemos(std::string(PROPFORGE_DATA_DIR) +
                             "/annotation_demos.json");
}

using testing_support::PreviewerPage;

// ---------------------------------------------------------------- prompts

TEST(AnnotationPromptTest, HasFiveComponentsInOrder) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  ASSERT_EQ(prompt.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(prompt[i].component, i + 1);
  EXPECT_EQ(prompt[0].role, "system");
  EXPECT_EQ(prompt[0].text,
            "You are a professional mobile app UI semantic annotation "
            "assistant.");
  EXPECT_THAT(prompt[1].text, HasSubstr("highlighted with a red box"));
}

TEST(AnnotationPromptTest, InputNamesAppAndActivity) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  EXPECT_THAT(prompt[3].text, HasSubstr("App name: AnkiDroid"));
  EXPECT_THAT(prompt[3].text, HasSubstr("Activity name: Previewer"));
}

TEST(AnnotationPromptTest, IsByteDeterministic) {
  const auto page = PreviewerPage();
  const capture::RasterImage shot(200, 100, capture::Rgba{10, 20, 30, 255});
  const auto a = BuildAnnotationPrompt(page, page.widgets[0], Demos(), &shot);
  const auto b = BuildAnnotationPrompt(page, page.widgets[0], Demos(), &shot);
  EXPECT_EQ(llm::SerializePrompt(a), llm::SerializePrompt(b));
}

TEST(AnnotationPromptTest, ScreenshotAddsHighlightAndCrop) {
  const auto page = PreviewerPage();
  const capture::RasterImage shot(200, 100, capture::Rgba{10, 20, 30, 255});
  const auto prompt =
      BuildAnnotationPrompt(page, page.widgets[0], Demos(), &shot);
  ASSERT_EQ(prompt[3].attachments.size(), 2u);
  const auto& boxed = prompt[3].attachments[0].image;
  EXPECT_EQ(boxed.at(0, 0), capture::kHighlightRed);
  EXPECT_EQ(boxed.at(50, 5), (capture::Rgba{10, 20, 30, 255}));
  const auto& crop = prompt[3].attachments[1].image;
  EXPECT_EQ(crop.width(), 100);
  EXPECT_EQ(crop.height(), 10);
}

TEST(AnnotationPromptTest, WithoutScreenshotMatchesGolden) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  EXPECT_TRUE(prompt[3].attachments.empty());
  EXPECT_THAT(prompt[3].text, HasSubstr("No screenshot available"));
  const std::string golden = ReadFile(std::string(PROPFORGE_GOLDEN_DIR) +
                                      "/annotation_prompt_no_screenshot.txt");
  EXPECT_EQ(llm::SerializePrompt(prompt), golden);
  EXPECT_EQ(testing_support::AnnotationGoldenPrompt(PROPFORGE_DATA_DIR), golden);
}

TEST(AnnotationPromptTest, WidgetOutsideScreenshotFallsBackToAttributes) {
  const auto page = PreviewerPage();
  const capture::RasterImage small(50, 5);
  const auto prompt =
      BuildAnnotationPrompt(page, page.widgets[0], Demos(), &small);
  EXPECT_TRUE(prompt[3].attachments.empty());
  EXPECT_THAT(prompt[3].text, HasSubstr("No screenshot available"));
}

TEST(AnnotationPromptTest, RequiresExactlyTwoDemos) {
  const auto page = PreviewerPage();
  auto demos = Demos();
  demos.pop_back();
  try {
    BuildAnnotationPrompt(page, page.widgets[0], demos);
    FAIL() << "expected MissingDemos";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingDemos);
  }
}

TEST(AttributeRenderingTest, AbsentValuesRenderAsNullString) {
  const auto w = Widget("Download", "line", std::nullopt,
                        "android.widget.TextView", false, 0);
  EXPECT_EQ(RenderWidgetAttributes(w),
            "{\"text\": \"Download\", \"resource_id\": \"line\", "
            "\"description\": \"null\", \"class\": \"android.widget.TextView\"}");
}

// ------------------------------------------------------------- annotation

TEST(AnnotateWidgetTest, ParsesPreviewerAnnotation) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  llm::MockProvider mock(
      {{llm::PromptKey(prompt),
        R"({"semantic_label": "Question text display", )"
        R"("functionality": "Displays the question text to the user for review"})"}});
  int retries = -1;
  const auto a = AnnotateWidget(mock, prompt, &retries);
  EXPECT_EQ(a.semantic_label, "Question text display");
  EXPECT_EQ(a.functionality, "Displays the question text to the user for review");
  EXPECT_EQ(retries, 0);
  EXPECT_EQ(mock.calls(), 1);
}

TEST(AnnotateWidgetTest, TrimsWhitespaceAndToleratesFences) {
  const auto parsed = ParseAnnotationResponse(
      "```json\n{\"semantic_label\": \"  Play button \", "
      "\"functionality\": \" Starts playback\\n\"}\n```");
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(parsed->semantic_label, "Play button");
  EXPECT_EQ(parsed->functionality, "Starts playback");
}

TEST(AnnotateWidgetTest, RejectsMissingKeysAndLongLabels) {
  EXPECT_FALSE(ParseAnnotationResponse("I think it is a button.").has_value());
  EXPECT_FALSE(ParseAnnotationResponse(R"({"semantic_label": "x"})").has_value());
  EXPECT_FALSE(ParseAnnotationResponse(
                   R"({"semantic_label": "", "functionality": "y"})")
                   .has_value());
  EXPECT_FALSE(ParseAnnotationResponse(
                   R"({"semantic_label": "one two three four five six seven )"
                   R"(eight nine", "functionality": "y"})")
                   .has_value());
}

// Answers every request from a script, recording how many messages it saw.
class ScriptedProvider : public llm::ChatProvider {
 public:
  explicit ScriptedProvider(std::vector<std::string> replies)
      : replies_(std::move(replies)) {}
  std::string Complete(const llm::ChatRequest& request) override {
    sizes_.push_back(request.messages.size());
    return replies_.at(sizes_.size() - 1);
  }
  std::string model() const override { return "scripted"; }
  std::vector<std::size_t> sizes_;

 private:
  std::vector<std::string> replies_;
};

TEST(AnnotateWidgetTest, ProseTwiceIsMalformedAfterOneRepair) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  ScriptedProvider provider({"It shows a question.", "Still prose."});
  try {
    AnnotateWidget(provider, prompt);
    FAIL() << "expected MalformedAnnotation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedAnnotation);
  }
  ASSERT_EQ(provider.sizes_.size(), 2u);
  EXPECT_EQ(provider.sizes_[1], prompt.size() + 2);
}

TEST(AnnotateWidgetTest, RepairRetryCanSucceed) {
  const auto page = PreviewerPage();
  const auto prompt = BuildAnnotationPrompt(page, page.widgets[0], Demos());
  ScriptedProvider provider(
      {"no json", R"({"semantic_label": "Question", "functionality": "Shows it"})"});
  int retries = 0;
  EXPECT_EQ(AnnotateWidget(provider, prompt, &retries).semantic_label,
            "Question");
  EXPECT_EQ(retries, 1);
}

TEST(HeuristicAnnotateTest, FollowsPriorityRules) {
  const PageCapture page;
  auto a = HeuristicAnnotate(
      page, Widget("Login", std::nullopt, std::nullopt, "android.widget.Button",
                   true, 0));
  EXPECT_EQ(a.semantic_label, "Login");
  EXPECT_EQ(a.functionality, "Triggers Login");

  a = HeuristicAnnotate(page, Widget(std::nullopt, "btn_submit", std::nullopt,
                                     "android.widget.Button", true, 0));
  EXPECT_EQ(a.semantic_label, "submit");

  a = HeuristicAnnotate(page, Widget(std::nullopt, std::nullopt, std::nullopt,
                                     "android.widget.TextView", false, 0));
  EXPECT_EQ(a.semantic_label, "TextView");
  EXPECT_EQ(a.functionality, "Displays TextView");

  a = HeuristicAnnotate(page, Widget(std::nullopt, "com.app:id/tv_userName",
                                     "Profile", "android.widget.TextView",
                                     false, 0));
  EXPECT_EQ(a.semantic_label, "Profile");
}

TEST(HeuristicAnnotateTest, HumanizesResourceIds) {
  EXPECT_EQ(HumanizeResourceId("com.app:id/iv_play_pause"), "play pause");
  EXPECT_EQ(HumanizeResourceId("searchButton"), "search button");
  EXPECT_EQ(HumanizeResourceId("id_btn_ok"), "ok");
  EXPECT_EQ(HumanizeResourceId("btn"), "");
}

// ---------------------------------------------------------------- store

PageCapture MenuPage(const std::string& activity, bool with_sort) {
  std::vector<WidgetAttributes> ws = {
      Widget(std::nullopt, std::nullopt, std::nullopt,
             "android.widget.FrameLayout", false, 0),
      Widget("Settings", "app.settings", std::nullopt,
             "android.widget.TextView", true, 1),
      Widget("Search", "com.pod:id/search_btn", std::nullopt,
             "android.widget.ImageButton", true, 2)};
  if (with_sort) {
    ws.push_back(Widget("Sort", "com.pod:id/sort", std::nullopt,
                        "android.widget.ImageButton", true, 3));
  }
  return capture::BuildPageCapture("Podcasts", activity, std::nullopt, ws);
}

TEST(StoreBuilderTest, DeduplicatesAcrossCapturesFirstWins) {
  HeuristicAnnotator annotator;
  const auto first = MenuPage("MainActivity", false);
  const auto second = MenuPage("FeedActivity", true);
  const auto store = BuildContextStore({first, second}, annotator);
  ASSERT_EQ(store.widgets.size(), 3u);
  int settings = 0;
  for (const auto& w : store.widgets) {
    if (w.attributes.text == "Settings") {
      ++settings;
      EXPECT_EQ(w.source_capture, first.capture_id);
    }
    EXPECT_TRUE(w.annotation.has_value());
  }
  EXPECT_EQ(settings, 1);
  EXPECT_EQ(store.dedup_index.size(), store.widgets.size());
}

TEST(StoreBuilderTest, EmptyInputGivesEmptyStore) {
  HeuristicAnnotator annotator;
  const auto store = BuildContextStore({}, annotator);
  EXPECT_TRUE(store.widgets.empty());
}

TEST(StoreBuilderTest, MixedAppsRejected) {
  HeuristicAnnotator annotator;
  auto other = MenuPage("Main", false);
  other.app_name = "Other";
  try {
    BuildContextStore({MenuPage("Main", false), other}, annotator);
    FAIL() << "expected MixedApps";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedApps);
  }
}

// Sleeps a little per call and records peak concurrency.
class SlowAnnotator : public Annotator {
 public:
  WidgetAnnotation Annotate(const PageCapture& page,
                            const WidgetAttributes& w) override {
    const int now = ++active_;
    int peak = peak_.load();
    while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --active_;
    return HeuristicAnnotate(page, w);
  }
  std::atomic<int> active_{0};
  std::atomic<int> peak_{0};
};

TEST(StoreBuilderTest, ConcurrencyIsBoundedAndOutputDeterministic) {
  std::vector<PageCapture> pages;
  for (int i = 0; i < 6; ++i) {
    std::vector<WidgetAttributes> ws;
    for (int j = 0; j < 4; ++j) {
      ws.push_back(Widget("item " + std::to_string(i * 4 + j), std::nullopt,
                          std::nullopt, "android.widget.TextView", true, j));
    }
    pages.push_back(capture::BuildPageCapture("App", "Act" + std::to_string(i),
                                              std::nullopt, ws));
  }
  SlowAnnotator slow;
  const auto parallel = BuildContextStore(pages, slow, 3);
  EXPECT_LE(slow.peak_.load(), 3);
  HeuristicAnnotator plain;
  EXPECT_EQ(parallel, BuildContextStore(pages, plain, 1));
}

TEST(StoreBuilderTest, BuildIsIdempotent) {
  HeuristicAnnotator annotator;
  const std::vector<PageCapture> pages = {MenuPage("A", true), MenuPage("B", false)};
  EXPECT_EQ(BuildContextStore(pages, annotator),
            BuildContextStore(pages, annotator));
}

TEST(ContextStoreTest, JsonRoundTripIsLossless) {
  auto store = MenuStore();
  store.widgets[2].annotation.reset();
  const auto back = StoreFromJson(StoreToJson(store));
  EXPECT_EQ(back, store);
  const auto j = StoreToJson(store);
  EXPECT_TRUE(j["widgets"][0]["content_description"].is_null());
  EXPECT_EQ(j["widgets"][0]["class"], "android.widget.TextView");
  EXPECT_EQ(j["widgets"][0]["semantic_label"], "Settings menu item");
}

TEST(ContextStoreTest, ParsedCapturesRoundTripThroughStoreFormat) {
  const auto widgets = capture::ParseViewHierarchy(
      capture::WriteViewHierarchy(MenuPage("Main", true).widgets));
  const auto page = capture::BuildPageCapture("Podcasts", "Main", std::nullopt,
                                              widgets);
  HeuristicAnnotator annotator;
  const auto store = BuildContextStore({page}, annotator);
  const auto back = StoreFromJson(StoreToJson(store));
  ASSERT_EQ(back.widgets.size(), store.widgets.size());
  for (std::size_t i = 0; i < back.widgets.size(); ++i) {
    EXPECT_EQ(back.widgets[i].attributes, store.widgets[i].attributes);
  }
}

TEST(ContextStoreTest, SaveAndLoad) {
  const auto path =
      std::filesystem::temp_directory_path() / "pf_store_test" / "context.json";
  SaveStore(MenuStore(), path);
  EXPECT_EQ(LoadStore(path), MenuStore());
  std::filesystem::remove_all(path.parent_path());
}

TEST(ContextStoreTest, DuplicateKeysRejectedOnLoad) {
  auto j = StoreToJson(MenuStore());
  j["widgets"].push_back(j["widgets"][0]);
  try {
    StoreFromJson(j);
    FAIL() << "expected SchemaError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaError);
  }
}

// ---------------------------------------------------------------- matcher

TEST(MatcherTest, SearchButtonRankedFirst) {
  const auto store = MenuStore();
  const auto result = MatchWidget("search button", store);
  ASSERT_FALSE(result.candidates.empty());
  EXPECT_EQ(result.candidates[0].widget_uid, store.widgets[1].uid);
  EXPECT_GE(result.candidates[0].score, 0.30);
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    EXPECT_GE(result.candidates[i - 1].score, result.candidates[i].score);
  }
}

TEST(MatcherTest, ScoreMatchesHandComputedDice) {
  // query {search, button}
  //   label {search, button}               dice 1     * 0.30
  //   text {search}                        dice 2/3   * 0.25
  //   functionality {opens, the, search, bar} 2/6     * 0.20
  //   id "search btn" -> {search, btn}     dice 2/4   * 0.15
  const double expected = 0.30 + 0.25 * 2.0 / 3.0 + 0.20 * 2.0 / 6.0 +
                          0.15 * 2.0 / 4.0;
  const auto result = MatchWidget("search button", MenuStore());
  EXPECT_NEAR(result.candidates[0].score, expected, 1e-12);
}

TEST(MatcherTest, NoOverlapGivesNoCandidates) {
  EXPECT_TRUE(MatchWidget("zebra", MenuStore()).candidates.empty());
}

TEST(MatcherTest, EmptyQueryRejected) {
  try {
    MatchWidget("  ?! ", MenuStore());
    FAIL() << "expected EmptyQuery";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyQuery);
  }
}

TEST(MatcherTest, TiesBreakByNodeIndex) {
  WidgetContextStore store;
  store.widgets.push_back(Enriched(
      Widget("Delete", std::nullopt, std::nullopt, "a.Button", true, 5),
      "Delete", "Removes"));
  store.widgets.push_back(Enriched(
      Widget("Delete", std::nullopt, std::nullopt, "b.Button", true, 2),
      "Delete", "Removes"));
  const auto result = MatchWidget("delete", store);
  ASSERT_EQ(result.candidates.size(), 2u);
  EXPECT_DOUBLE_EQ(result.candidates[0].score, result.candidates[1].score);
  EXPECT_EQ(result.candidates[0].node_index, 2);
  EXPECT_EQ(result.candidates[1].node_index, 5);
}

TEST(MatcherTest, UnrelatedWidgetDoesNotChangeScores) {
  auto store = MenuStore();
  const auto before = MatchWidget("open settings", store);
  store.widgets.push_back(Enriched(
      Widget("Volume", std::nullopt, std::nullopt, "x.SeekBar", false, 9),
      "Volume slider", "Adjusts loudness"));
  const auto after = MatchWidget("open settings", store);
  ASSERT_EQ(before.candidates.size(), after.candidates.size());
  for (std::size_t i = 0; i < before.candidates.size(); ++i) {
    EXPECT_EQ(before.candidates[i], after.candidates[i]);
    EXPECT_GE(after.candidates[i].score, 0.0);
    EXPECT_LE(after.candidates[i].score, 1.0);
  }
}

TEST(SameWidgetTest, DualIdentifierSettings) {
  const auto store = MenuStore();
  EXPECT_TRUE(SameWidget(Sel(Field::kText, "Settings"),
                         Sel(Field::kId, "app.settings"), store));
  EXPECT_TRUE(SameWidget(Sel(Field::kId, "app.settings"),
                         Sel(Field::kText, "Settings"), store));
}

TEST(SameWidgetTest, ReflexiveOnlyWhenResolvable) {
  const auto store = MenuStore();
  EXPECT_TRUE(SameWidget(Sel(Field::kText, "Sort"), Sel(Field::kText, "Sort"),
                         store));
  EXPECT_FALSE(SameWidget(Sel(Field::kText, "Nope"), Sel(Field::kText, "Nope"),
                          store));
}

TEST(SameWidgetTest, DisjointWidgetsDiffer) {
  EXPECT_FALSE(SameWidget(Sel(Field::kText, "Settings"),
                          Sel(Field::kText, "Search"), MenuStore()));
}

TEST(SameWidgetTest, TransitiveOverEqualSets) {
  const auto store = MenuStore();
  const auto a = Sel(Field::kText, "Search");
  const auto b = Sel(Field::kId, "search_btn");
  const auto c = Sel(Field::kText, "earc", MatchMode::kContains);
  ASSERT_TRUE(SameWidget(a, b, store));
  ASSERT_TRUE(SameWidget(b, c, store));
  EXPECT_TRUE(SameWidget(a, c, store));
}

TEST(MostSpecificSelectorTest, PrefersUniqueIdThenText) {
  const auto store = MenuStore();
  const auto s = MostSpecificSelector(store.widgets[1], store);
  ASSERT_EQ(s.clauses.size(), 1u);
  EXPECT_EQ(s.clauses[0].field, Field::kId);
  EXPECT_EQ(ResolveSelector(s, store),
            std::vector<std::string>{store.widgets[1].uid});
}

TEST(MostSpecificSelectorTest, IdSeenInSeveralStatesStillNamesTheWidget) {
  // A path label captured twice with different texts, plus two list rows
  // that share an id within one capture.
  WidgetContextStore store;
  auto add = [&](std::string capture, WidgetAttributes w) {
    EnrichedWidget e;
    e.source_capture = std::move(capture);
    e.uid = WidgetUid(e.source_capture, w.node_index);
    e.attributes = std::move(w);
    store.widgets.push_back(std::move(e));
  };
  add("cap0", Widget("/sdcard", "fm:id/path", std::nullopt, "TextView", false, 0));
  add("cap0", Widget("Music", "fm:id/row", std::nullopt, "TextView", true, 1));
  add("cap0", Widget("Notes", "fm:id/row", std::nullopt, "TextView", true, 2));
  add("cap1", Widget("/sdcard/Music", "fm:id/path", std::nullopt, "TextView", false, 0));

  const auto path = MostSpecificSelector(store.widgets[3], store);
  EXPECT_EQ(path, Sel(Field::kId, "fm:id/path"));
  const auto row = MostSpecificSelector(store.widgets[2], store);
  EXPECT_EQ(row, Sel(Field::kText, "Notes"));
}

}  // namespace
}  // namespace propforge::grounding
