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

#ifndef PROPFORGE_CAPTURE_VIEW_HIERARCHY_H_
#define PROPFORGE_CAPTURE_VIEW_HIERARCHY_H_

#include <string>
#include <string_view>
#include <vector>

#include "propforge/capture/widget.h"

namespace propforge::capture {

// Parses a uiautomator dump. Returns one record per <node> element in
// document (pre-order) order with node_index == position in the result.
// Throws Error(kMalformedDocument) or Error(kMalformedBounds).
std::vector<WidgetAttributes> ParseViewHierarchy(std::string_view xml_text);

// Parses "[l,t][r,b]". Throws Error(kMalformedBounds).
Bounds ParseBounds(std::string_view text);
std::string FormatBounds(const Bounds& bounds);

// True for nodes worth grounding: anything carrying text, a resource id or a
// content description, plus clickable containers. Pure layout nodes fail.
bool IsInteractive(const WidgetAttributes& widget);

// Renders widgets back into a uiautomator-style dump (flat, one <node> per
// widget). ParseViewHierarchy(WriteViewHierarchy(w)) reproduces w when the
// node indices are 0..n-1.
std::string WriteViewHierarchy(const std::vector<WidgetAttributes>& widgets);

}  // namespace propforge::capture

#endif  // PROPFORGE_CAPTURE_VIEW_HIERARCHY_H_
