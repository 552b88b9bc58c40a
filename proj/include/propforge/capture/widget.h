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

#ifndef PROPFORGE_CAPTURE_WIDGET_H_
#define PROPFORGE_CAPTURE_WIDGET_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace propforge::capture {

// Screen rectangle in pixels; right/bottom are exclusive.
struct Bounds {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  int width() const { return right - left; }
  int height() const { return bottom - top; }

  bool operator==(const Bounds&) const = default;
};

// The identifying attributes of one view-hierarchy node. Empty attribute
// strings in a dump are normalized to std::nullopt.
struct WidgetAttributes {
  std::optional<std::string> text;
  std::optional<std::string> resource_id;
  std::optional<std::string> content_description;
  std::string class_name;
  bool clickable = false;
  Bounds bounds;
  int node_index = 0;  // document order within one capture

  bool operator==(const WidgetAttributes&) const = default;
};

struct PageCapture {
  std::string app_name;
  std::string activity_name;
  std::optional<std::filesystem::path> screenshot_path;
  std::vector<WidgetAttributes> widgets;
  std::string capture_id;

  bool operator==(const PageCapture&) const = default;
};

// Contents of a capture's app.json.
struct AppMetadata {
  std::string app_name;
  std::string activity_name;
};

}  // namespace propforge::capture

#endif  // PROPFORGE_CAPTURE_WIDGET_H_
