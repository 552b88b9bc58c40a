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

#include "propforge/grounding/annotation.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/text.h"

namespace propforge::grounding {

using nlohmann::json;

namespace {

constexpr int kHighlightStrokePx = 4;

constexpr char kRole[] =
    "You are a professional mobile app UI semantic annotation assistant.";

constexpr char kTask[] =
    "Please annotate the provided UI widget with the semantic label and "
    "functionality description based on the given context.\n"
    "- The full page screenshot, where the target widget is highlighted with "
    "a red box.\n"
    "- The cropped widget image and its attributes.\n"
    "- The provided app name and foreground activity name.";

constexpr char kConstraints[] =
    "Strict rules:\n"
    "1. Respond with a single JSON object and nothing else.\n"
    "2. The object has exactly two string keys: \"semantic_label\" and "
    "\"functionality\".\n"
    "3. \"semantic_label\" is a concise name for the widget of at most 8 "
    "words, for example \"login button\".\n"
    "4. \"functionality\" is one sentence describing what the widget does for "
    "the user, for example \"Navigates to the settings screen\".\n"
    "5. Do not include explanations, markdown or code fences.";

constexpr char kRepairReminder[] =
    "Your previous reply did not follow the required format. Respond with "
    "only a JSON object of the form {\"semantic_label\": \"...\", "
    "\"functionality\": \"...\"}. The label must have at most 8 words.";

std::string JsonString(const std::optional<std::string>& v) {
  return json(v.value_or("null")).dump();
}

std::string RenderAnnotation(const WidgetAnnotation& a) {
  return "{\"semantic_label\": " + json(a.semantic_label).dump() +
         ", \"functionality\": " + json(a.functionality).dump() + "}";
}

std::size_t WordCount(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::string FirstWords(std::string_view s, std::size_t limit) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> words;
  for (std::string w; words.size() < limit && in >> w;) words.push_back(w);
  return Join(words, " ");
}

std::string ClassSuffix(std::string_view cls) {
  const auto pos = cls.rfind('.');
  return std::string(pos == std::string_view::npos ? cls : cls.substr(pos + 1));
}

}  // namespace

std::string RenderWidgetAttributes(const capture::WidgetAttributes& w) {
  return "{\"text\": " + JsonString(w.text) +
         ", \"resource_id\": " + JsonString(w.resource_id) +
         ", \"description\": " + JsonString(w.content_description) +
         ", \"class\": " + json(w.class_name).dump() + "}";
}

std::vector<AnnotationDemo> LoadAnnotationDemos(const std::filesystem::path& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (!doc.is_array()) {
    throw Error(ErrorCode::kMissingDemos, path.string() + " is not a JSON array");
  }
  std::vector<AnnotationDemo> demos;
  try {
    for (const auto& entry : doc) {
      AnnotationDemo d;
      d.app_name = entry.at("app_name").get<std::string>();
      d.activity_name = entry.at("activity_name").get<std::string>();
      const auto& w = entry.at("widget");
      auto opt = [&](const char* key) -> std::optional<std::string> {
        if (!w.contains(key) || w.at(key).is_null()) return std::nullopt;
        auto s = w.at(key).get<std::string>();
        if (s.empty()) return std::nullopt;
        return s;
      };
      d.widget.text = opt("text");
      d.widget.resource_id = opt("resource_id");
      d.widget.content_description = opt("content_description");
      d.widget.class_name = w.at("class").get<std::string>();
      d.annotation.semantic_label = entry.at("semantic_label").get<std::string>();
      d.annotation.functionality = entry.at("functionality").get<std::string>();
      demos.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMissingDemos,
                path.string() + ": malformed demo: " + e.what());
  }
  return demos;
}

llm::PromptMessages BuildAnnotationPrompt(const capture::PageCapture& page,
                                          const capture::WidgetAttributes& widget,
                                          const std::vector<AnnotationDemo>& demos,
                                          const capture::RasterImage* screenshot) {
  if (demos.size() != 2) {
    throw Error(ErrorCode::kMissingDemos,
                "annotation prompts take exactly 2 demonstrations, got " +
                    std::to_string(demos.size()));
  }
  llm::PromptMessages messages;
  messages.push_back({"system", kRole, {}, 1, "role"});
  messages.push_back({"user", kTask, {}, 2, "task"});

  std::string demo_text = "Here are two examples of the expected annotation.\n";
  for (std::size_t i = 0; i < demos.size(); ++i) {
    const auto& d = demos[i];
    const std::string n = std::to_string(i + 1);
    demo_text += "\nExample " + n + " input:\n";
    demo_text += "- App name: " + d.app_name + "\n";
    demo_text += "- Activity name: " + d.activity_name + "\n";
    demo_text += "- Widget attributes: " + RenderWidgetAttributes(d.widget) + "\n";
    demo_text += "Example " + n + " output:\n" + RenderAnnotation(d.annotation) + "\n";
  }
  messages.push_back({"user", demo_text, {}, 3, "demonstrations"});

  const bool with_images = screenshot != nullptr &&
                           widget.bounds.width() > 0 &&
                           widget.bounds.height() > 0 &&
                           capture::FitsInside(*screenshot, widget.bounds);
  std::string input = "Page information:\n";
  input += "- App name: " + page.app_name + "\n";
  input += "- Activity name: " + page.activity_name + "\n";
  if (with_images) {
    input += "- Page screenshot: attached; the target widget is highlighted "
             "with a red box.\n";
  } else {
    input += "- Page screenshot: No screenshot available; rely on the widget "
             "attributes.\n";
  }
  input += "Widget information:\n";
  input += with_images ? "- Widget image: attached, cropped from the page "
                         "screenshot.\n"
                       : "- Widget image: not available.\n";
  input += "- Widget attributes: " + RenderWidgetAttributes(widget) + "\n";
  llm::ChatMessage input_msg{"user", input, {}, 4, "input"};
  if (with_images) {
    input_msg.attachments.push_back(
        {"page screenshot with red box",
         capture::HighlightWidget(*screenshot, widget.bounds, kHighlightStrokePx)});
    input_msg.attachments.push_back(
        {"cropped widget", capture::CropWidgetImage(*screenshot, widget.bounds)});
  }
  messages.push_back(std::move(input_msg));
  messages.push_back({"user", kConstraints, {}, 5, "constraints"});
  return messages;
}

std::optional<WidgetAnnotation> ParseAnnotationResponse(const std::string& reply) {
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    return std::nullopt;
  }
  json doc = json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (!doc.is_object()) return std::nullopt;
  auto field = [&](const char* key) -> std::optional<std::string> {
    if (!doc.contains(key) || !doc.at(key).is_string()) return std::nullopt;
    std::string v(Trim(doc.at(key).get<std::string>()));
    if (v.empty()) return std::nullopt;
    return v;
  };
  auto label = field("semantic_label");
  auto func = field("functionality");
  if (!label || !func) return std::nullopt;
  if (WordCount(*label) > static_cast<std::size_t>(kMaxLabelWords)) {
    return std::nullopt;
  }
  return WidgetAnnotation{*label, *func};
}

WidgetAnnotation AnnotateWidget(llm::ChatProvider& provider,
                                const llm::PromptMessages& prompt,
                                int* retries_used) {
  llm::ChatRequest request{provider.model(), 0.0, prompt};
  const std::string first = provider.Complete(request);
  if (auto parsed = ParseAnnotationResponse(first)) {
    if (retries_used) *retries_used = 0;
    return *parsed;
  }
  request.messages.push_back({"assistant", first, {}, 0, ""});
  request.messages.push_back({"user", kRepairReminder, {}, 0, ""});
  const std::string second = provider.Complete(request);
  if (retries_used) *retries_used = 1;
  if (auto parsed = ParseAnnotationResponse(second)) return *parsed;
  throw Error(ErrorCode::kMalformedAnnotation,
              "reply lacks semantic_label/functionality after one repair: " +
                  second.substr(0, 120));
}

std::string HumanizeResourceId(std::string_view resource_id) {
  const auto slash = resource_id.rfind('/');
  if (slash != std::string_view::npos) resource_id = resource_id.substr(slash + 1);
  std::vector<std::string> words = WordTokens(resource_id);
  static const std::set<std::string> kPrefixes = {"btn", "tv", "iv", "id"};
  std::size_t start = 0;
  while (start < words.size() && kPrefixes.count(words[start]) > 0) ++start;
  words.erase(words.begin(), words.begin() + static_cast<long>(start));
  return Join(words, " ");
}

WidgetAnnotation HeuristicAnnotate(const capture::PageCapture& /*page*/,
                                   const capture::WidgetAttributes& w) {
  std::string label;
  if (w.text && !Trim(*w.text).empty()) {
    label = FirstWords(*w.text, kMaxLabelWords);
  } else if (w.content_description && !Trim(*w.content_description).empty()) {
    label = FirstWords(*w.content_description, kMaxLabelWords);
  } else if (w.resource_id) {
    label = FirstWords(HumanizeResourceId(*w.resource_id), kMaxLabelWords);
  }
  if (label.empty()) label = ClassSuffix(w.class_name);
  if (label.empty()) label = "widget";
  return {label, (w.clickable ? "Triggers " : "Displays ") + label};
}

MllmAnnotator::MllmAnnotator(llm::ChatProvider& provider,
                             std::vector<AnnotationDemo> demos,
                             ScreenshotLoader loader)
    : provider_(provider), demos_(std::move(demos)), loader_(std::move(loader)) {}

const capture::RasterImage* MllmAnnotator::Screenshot(
    const capture::PageCapture& page) {
  if (!loader_ || !page.screenshot_path) return nullptr;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(page.capture_id);
  if (it == cache_.end()) {
    auto image = loader_(page);
    it = cache_
             .emplace(page.capture_id,
                      image ? std::make_unique<capture::RasterImage>(std::move(*image))
                            : nullptr)
             .first;
  }
  return it->second.get();
}

WidgetAnnotation MllmAnnotator::Annotate(const capture::PageCapture& page,
                                         const capture::WidgetAttributes& widget) {
  const capture::RasterImage* screenshot = Screenshot(page);
  return AnnotateWidget(provider_,
                        BuildAnnotationPrompt(page, widget, demos_, screenshot));
}

}  // namespace propforge::grounding
