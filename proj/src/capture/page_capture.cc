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

#include "propforge/capture/page_capture.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "propforge/capture/view_hierarchy.h"
#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/hash.h"
#include "propforge/common/text.h"

namespace propforge::capture {

namespace fs = std::filesystem;
using nlohmann::json;

PageCapture BuildPageCapture(std::string app_name, std::string activity_name,
                             std::optional<fs::path> screenshot_path,
                             std::vector<WidgetAttributes> widgets) {
  if (Trim(app_name).empty() || Trim(activity_name).empty()) {
    throw Error(ErrorCode::kEmptyIdentity, "app and activity names are required");
  }
  // Field separators cannot appear in attribute text from a dump.
  std::string key = app_name + '\x1e' + activity_name + '\x1e' +
                    (screenshot_path ? screenshot_path->generic_string() : "") +
                    '\x1e';
  for (const auto& w : widgets) {
    key += w.text.value_or("\x01") + '\x1f' + w.resource_id.value_or("\x01") +
           '\x1f' + w.content_description.value_or("\x01") + '\x1f' +
           w.class_name + '\x1f' + (w.clickable ? "1" : "0") + '\x1f' +
           FormatBounds(w.bounds) + '\x1f' + std::to_string(w.node_index) +
           '\x1e';
  }
  PageCapture page;
  page.capture_id = Sha256Hex(key).substr(0, 16);
  page.app_name = std::move(app_name);
  page.activity_name = std::move(activity_name);
  page.screenshot_path = std::move(screenshot_path);
  page.widgets = std::move(widgets);
  return page;
}

AppMetadata ParseAppMetadata(std::string_view json_text) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (!doc.is_object() || !doc.contains("app_name") ||
      !doc.contains("activity_name") || !doc["app_name"].is_string() ||
      !doc["activity_name"].is_string()) {
    throw Error(ErrorCode::kMalformedDocument,
                "app.json must hold string fields app_name and activity_name");
  }
  return {doc["app_name"].get<std::string>(),
          doc["activity_name"].get<std::string>()};
}

PageCapture LoadCaptureDirectory(const fs::path& dir) {
  const AppMetadata meta = ParseAppMetadata(ReadFile(dir / "app.json"));
  std::vector<fs::path> dumps;
  std::vector<fs::path> pngs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = ToLower(entry.path().extension().string());
    if (ext == ".xml") dumps.push_back(entry.path());
    if (ext == ".png") pngs.push_back(entry.path());
  }
  if (dumps.size() != 1) {
    throw Error(ErrorCode::kMalformedDocument,
                dir.string() + " must contain exactly one .xml dump");
  }
  std::sort(pngs.begin(), pngs.end());
  std::optional<fs::path> screenshot;
  // Stored relative to the capture directory so ids survive moving a
  // workspace.
  if (!pngs.empty()) screenshot = pngs.front().filename();
  return BuildPageCapture(meta.app_name, meta.activity_name, screenshot,
                          ParseViewHierarchy(ReadFile(dumps.front())));
}

}  // namespace propforge::capture
