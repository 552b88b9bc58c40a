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

#include "propforge/propdsl/selector.h"

#include "propforge/common/text.h"

namespace propforge::propdsl {

std::string_view FieldName(Field field) {
  switch (field) {
    case Field::kText: return "text";
    case Field::kId: return "id";
    case Field::kDesc: return "desc";
    case Field::kClass: return "class";
  }
  return "text";
}

std::optional<Field> FieldFromName(std::string_view name) {
  if (name == "text") return Field::kText;
  if (name == "id") return Field::kId;
  if (name == "desc") return Field::kDesc;
  if (name == "class") return Field::kClass;
  return std::nullopt;
}

AttributeView ViewOf(const capture::WidgetAttributes& w) {
  AttributeView v;
  if (w.text) v.text = *w.text;
  if (w.resource_id) v.resource_id = *w.resource_id;
  if (w.content_description) v.content_description = *w.content_description;
  v.class_name = w.class_name;
  return v;
}

namespace {

std::string_view ShortId(std::string_view id) {
  const auto pos = id.find(":id/");
  return pos == std::string_view::npos ? id : id.substr(pos + 4);
}

std::string_view ShortClass(std::string_view cls) {
  const auto pos = cls.rfind('.');
  return pos == std::string_view::npos ? cls : cls.substr(pos + 1);
}

}  // namespace

bool ClauseMatches(const SelectorClause& clause, MatchMode mode,
                   const AttributeView& attrs) {
  std::optional<std::string_view> actual;
  switch (clause.field) {
    case Field::kText: actual = attrs.text; break;
    case Field::kId: actual = attrs.resource_id; break;
    case Field::kDesc: actual = attrs.content_description; break;
    case Field::kClass: actual = attrs.class_name; break;
  }
  if (!actual) return false;
  if (mode == MatchMode::kContains) {
    return actual->find(clause.value) != std::string_view::npos;
  }
  if (*actual == clause.value) return true;
  if (clause.field == Field::kId) return ShortId(*actual) == clause.value;
  if (clause.field == Field::kClass) return ShortClass(*actual) == clause.value;
  return false;
}

bool SelectorMatches(const Selector& selector, const AttributeView& attrs) {
  if (selector.clauses.empty()) return false;
  for (const auto& clause : selector.clauses) {
    if (!ClauseMatches(clause, selector.mode, attrs)) return false;
  }
  return true;
}

std::string FormatSelector(const Selector& selector) {
  std::string out = "widget(";
  for (std::size_t i = 0; i < selector.clauses.size(); ++i) {
    if (i > 0) out += ", ";
    out += FieldName(selector.clauses[i].field);
    out += "=";
    out += QuoteString(selector.clauses[i].value);
  }
  if (selector.mode == MatchMode::kContains) out += ", mode=contains";
  out += ")";
  return out;
}

}  // namespace propforge::propdsl
