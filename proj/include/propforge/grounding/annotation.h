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

// Widget functionality annotation: the prompt sent to a multimodal model, the
// response contract, and an offline heuristic annotator with the same
// interface.

#ifndef PROPFORGE_GROUNDING_ANNOTATION_H_
#define PROPFORGE_GROUNDING_ANNOTATION_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "propforge/capture/raster.h"
#include "propforge/capture/widget.h"
#include "propforge/grounding/context_store.h"
#include "propforge/llm/provider.h"

namespace propforge::grounding {

inline constexpr int kMaxLabelWords = 8;

// One worked example shown to the model: a widget in its page and the
// annotation expected for it.
struct AnnotationDemo {
  std::string app_name;
  std::string activity_name;
  capture::WidgetAttributes widget;
  WidgetAnnotation annotation;
};

// Reads a JSON array of {"app_name","activity_name","widget":{"text",
// "resource_id","content_description","class"},"semantic_label",
// "functionality"} objects.
std::vector<AnnotationDemo> LoadAnnotationDemos(const std::filesystem::path& path);

// Renders {"text": ..., "resource_id": ..., "description": ..., "class": ...}
// with absent values written as the string "null".
std::string RenderWidgetAttributes(const capture::WidgetAttributes& w);

// Five components in order: role, task, demonstrations, input, constraints.
// With a screenshot whose area contains the widget, the input carries two
// images: the page with the widget boxed in red, and the widget crop.
// Otherwise the input says no screenshot is available. Throws
// Error(kMissingDemos) unless exactly two demos are given.
llm::PromptMessages BuildAnnotationPrompt(
    const capture::PageCapture& page, const capture::WidgetAttributes& widget,
    const std::vector<AnnotationDemo>& demos,
    const capture::RasterImage* screenshot = nullptr);

// Parses {"semantic_label": ..., "functionality": ...} out of a model reply
// (surrounding prose and code fences are tolerated). Returns nullopt when the
// reply breaks the contract.
std::optional<WidgetAnnotation> ParseAnnotationResponse(const std::string& reply);

// Sends the prompt; on a contract violation re-sends once with a format
// reminder. Throws Error(kMalformedAnnotation) after the repair fails and
// propagates Error(kProviderError).
WidgetAnnotation AnnotateWidget(llm::ChatProvider& provider,
                                const llm::PromptMessages& prompt,
                                int* retries_used = nullptr);

// "com.app:id/btn_submit" -> "submit". Empty when nothing meaningful is left.
std::string HumanizeResourceId(std::string_view resource_id);

// Deterministic offline annotation: label from text, then content
// description, then humanized resource id, then the class suffix.
WidgetAnnotation HeuristicAnnotate(const capture::PageCapture& page,
                                   const capture::WidgetAttributes& widget);

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual WidgetAnnotation Annotate(const capture::PageCapture& page,
                                    const capture::WidgetAttributes& widget) = 0;
};

class HeuristicAnnotator : public Annotator {
 public:
  WidgetAnnotation Annotate(const capture::PageCapture& page,
                            const capture::WidgetAttributes& widget) override {
    return HeuristicAnnotate(page, widget);
  }
};

// Returns the decoded screenshot for a capture, or nullopt.
using ScreenshotLoader =
    std::function<std::optional<capture::RasterImage>(const capture::PageCapture&)>;

class MllmAnnotator : public Annotator {
 public:
  MllmAnnotator(llm::ChatProvider& provider, std::vector<AnnotationDemo> demos,
                ScreenshotLoader loader = {});

  WidgetAnnotation Annotate(const capture::PageCapture& page,
                            const capture::WidgetAttributes& widget) override;

 private:
  const capture::RasterImage* Screenshot(const capture::PageCapture& page);

  llm::ChatProvider& provider_;
  std::vector<AnnotationDemo> demos_;
  ScreenshotLoader loader_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<capture::RasterImage>> cache_;
};

}  // namespace propforge::grounding

#endif  // PROPFORGE_GROUNDING_ANNOTATION_H_
