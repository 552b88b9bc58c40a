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

#include "propforge/grounding/context_store.h"

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/hash.h"

namespace propforge::grounding {

using nlohmann::json;

const EnrichedWidget* WidgetContextStore::Find(std::string_view uid) const {
  for (const auto& w : widgets) {
    if (w.uid == uid) return &w;
  }
  return nullptr;
}

std::string DedupKey(const capture::WidgetAttributes& w) {
  auto part = [](const std::optional<std::string>& v) {
    return v ? "=" + *v : std::string("~");
  };
  return part(w.resource_id) + '\x1f' + part(w.text) + '\x1f' +
         part(w.content_description) + '\x1f' + w.class_name;
}

std::string WidgetUid(std::string_view capture_id, int node_index) {
  return Sha256Hex(std::string(capture_id) + "#" + std::to_string(node_index))
      .substr(0, 16);
}

namespace {

json OptionalToJson(const std::optional<std::string>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::string> OptionalFromJson(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return obj.at(key).get<std::string>();
}

}  // namespace

json StoreToJson(const WidgetContextStore& store) {
  json widgets = json::array();
  for (const auto& w : store.widgets) {
    const auto& a = w.attributes;
    json entry = {
        {"uid", w.uid},
        {"text", OptionalToJson(a.text)},
        {"resource_id", OptionalToJson(a.resource_id)},
        {"content_description", OptionalToJson(a.content_description)},
        {"class", a.class_name},
        {"semantic_label",
         w.annotation ? json(w.annotation->semantic_label) : json(nullptr)},
        {"functionality",
         w.annotation ? json(w.annotation->functionality) : json(nullptr)},
        {"clickable", a.clickable},
        {"bounds",
         {a.bounds.left, a.bounds.top, a.bounds.right, a.bounds.bottom}},
        {"node_index", a.node_index},
        {"capture", w.source_capture},
    };
    widgets.push_back(std::move(entry));
  }
  return {{"app_name", store.app_name}, {"widgets", std::move(widgets)}};
}

WidgetContextStore StoreFromJson(const json& doc) {
  WidgetContextStore store;
  try {
    store.app_name = doc.at("app_name").get<std::string>();
    for (const auto& entry : doc.at("widgets")) {
      EnrichedWidget w;
      w.uid = entry.at("uid").get<std::string>();
      auto& a = w.attributes;
      a.text = OptionalFromJson(entry, "text");
      a.resource_id = OptionalFromJson(entry, "resource_id");
      a.content_description = OptionalFromJson(entry, "content_description");
      a.class_name = entry.at("class").get<std::string>();
      a.clickable = entry.value("clickable", false);
      if (entry.contains("bounds")) {
        const auto& b = entry.at("bounds");
        a.bounds = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                    b.at(3).get<int>()};
      }
      a.node_index = entry.value("node_index", 0);
      w.source_capture = entry.value("capture", std::string());
      auto label = OptionalFromJson(entry, "semantic_label");
      auto func = OptionalFromJson(entry, "functionality");
      if (label && func) w.annotation = WidgetAnnotation{*label, *func};
      if (!store.dedup_index.emplace(DedupKey(a), w.uid).second) {
        throw Error(ErrorCode::kSchemaError,
                    "duplicate widget in context store: " + w.uid);
      }
      store.widgets.push_back(std::move(w));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("malformed context store: ") + e.what());
  }
  return store;
}

std::string SerializeStore(const WidgetContextStore& store) {
  return StoreToJson(store).dump(2) + "\n";
}

void SaveStore(const WidgetContextStore& store,
               const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeStore(store));
}

WidgetContextStore LoadStore(const std::filesystem::path& path) {
  json doc = json::parse(ReadFile(path), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kSchemaError, path.string() + " is not valid JSON");
  }
  return StoreFromJson(doc);
}

}  // namespace propforge::grounding
