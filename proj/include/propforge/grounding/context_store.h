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

#ifndef PROPFORGE_GROUNDING_CONTEXT_STORE_H_
#define PROPFORGE_GROUNDING_CONTEXT_STORE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/capture/widget.h"

namespace propforge::grounding {

struct WidgetAnnotation {
  std::string semantic_label;
  std::string functionality;

  bool operator==(const WidgetAnnotation&) const = default;
};

struct EnrichedWidget {
  std::string uid;  // hash of (source_capture, node_index)
  capture::WidgetAttributes attributes;
  std::optional<WidgetAnnotation> annotation;
  std::string source_capture;

  bool operator==(const EnrichedWidget&) const = default;
};

// The enriched widget context of one app. Built once, then read-only.
struct WidgetContextStore {
  std::string app_name;
  std::vector<EnrichedWidget> widgets;
  std::map<std::string, std::string> dedup_index;  // dedup key -> uid

  const EnrichedWidget* Find(std::string_view uid) const;

  bool operator==(const WidgetContextStore&) const = default;
};

// Key identifying one logical widget across captures. Bounds are excluded so
// a widget seen on scrolled pages collapses to one entry.
std::string DedupKey(const capture::WidgetAttributes& w);

std::string WidgetUid(std::string_view capture_id, int node_index);

// context.json. Absent attributes are JSON null.
nlohmann::json StoreToJson(const WidgetContextStore& store);
WidgetContextStore StoreFromJson(const nlohmann::json& doc);

std::string SerializeStore(const WidgetContextStore& store);
void SaveStore(const WidgetContextStore& store, const std::filesystem::path& path);
WidgetContextStore LoadStore(const std::filesystem::path& path);

}  // namespace propforge::grounding

#endif  // PROPFORGE_GROUNDING_CONTEXT_STORE_H_
