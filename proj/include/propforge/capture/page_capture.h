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

#ifndef PROPFORGE_CAPTURE_PAGE_CAPTURE_H_
#define PROPFORGE_CAPTURE_PAGE_CAPTURE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propforge/capture/widget.h"

namespace propforge::capture {

// capture_id is a content hash over every argument, so identical inputs
// always produce the same id. Throws Error(kEmptyIdentity) on a blank app or
// activity name.
PageCapture BuildPageCapture(
    std::string app_name, std::string activity_name,
    std::optional<std::filesystem::path> screenshot_path,
    std::vector<WidgetAttributes> widgets);

// Parses app.json: {"app_name": ..., "activity_name": ...}.
AppMetadata ParseAppMetadata(std::string_view json_text);

// Loads a capture directory holding app.json, one *.xml dump and an optional
// *.png screenshot.
PageCapture LoadCaptureDirectory(const std::filesystem::path& dir);

}  // namespace propforge::capture

#endif  // PROPFORGE_CAPTURE_PAGE_CAPTURE_H_
