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

#ifndef PROPFORGE_PROPDSL_SELECTOR_H_
#define PROPFORGE_PROPDSL_SELECTOR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propforge/capture/widget.h"

namespace propforge::propdsl {

// Positions are diagnostics only: two nodes at different positions are still
// structurally equal, so this type compares equal to every other position.
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

enum class Field { kText, kId, kDesc, kClass };
enum class MatchMode { kExact, kContains };

std::string_view FieldName(Field field);  // "text", "id", "desc", "class"
std::optional<Field> FieldFromName(std::string_view name);

struct SelectorClause {
  Field field = Field::kText;
  std::string value;

  bool operator==(const SelectorClause&) const = default;
};

// A conjunction of attribute clauses evaluated under one match mode.
struct Selector {
  std::vector<SelectorClause> clauses;
  MatchMode mode = MatchMode::kExact;
  SourcePos pos;

  bool operator==(const Selector&) const = default;
};

// The attribute values a selector is matched against.
struct AttributeView {
  std::optional<std::string_view> text;
  std::optional<std::string_view> resource_id;
  std::optional<std::string_view> content_description;
  std::string_view class_name;
};

AttributeView ViewOf(const capture::WidgetAttributes& w);

// Exact mode compares whole values. For `id`, a value also matches the part
// after ":id/" ("search" matches "com.app:id/search"); for `class`, the part
// after the last '.' ("TextView" matches "android.widget.TextView"). Contains
// mode is substring search on the full value.
bool ClauseMatches(const SelectorClause& clause, MatchMode mode,
                   const AttributeView& attrs);
bool SelectorMatches(const Selector& selector, const AttributeView& attrs);

// widget(text="...", id="...", mode=contains)
std::string FormatSelector(const Selector& selector);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_SELECTOR_H_
