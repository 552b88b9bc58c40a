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

#include "propforge/simulator/app_model.h"

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"

namespace propforge::simulator {

using nlohmann::json;

namespace {

[[noreturn]] void Schema(const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, msg);
}

[[noreturn]] void Dangling(const std::string& msg) {
  throw Error(ErrorCode::kDanglingReference, msg);
}

std::optional<std::string> OptionalString(const json& obj, const char* key,
                                          const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  if (!obj[key].is_string()) Schema(where + ": \"" + key + "\" must be a string");
  std::string v = obj[key];
  if (v.empty()) return std::nullopt;
  return v;
}

SimWidget ParseWidget(const json& w, const std::string& where, int index) {
  if (!w.is_object()) Schema(where + ": widget must be an object");
  SimWidget out;
  auto& a = out.attributes;
  a.text = OptionalString(w, "text", where);
  a.resource_id = OptionalString(w, "id", where);
  a.content_description = OptionalString(w, "desc", where);
  const auto cls = OptionalString(w, "class", where);
  if (!cls) Schema(where + ": widget needs a class");
  a.class_name = *cls;
  if (w.contains("clickable")) {
    if (!w["clickable"].is_boolean()) Schema(where + ": clickable must be boolean");
    a.clickable = w["clickable"];
  }
  a.node_index = index;
  out.text_var = OptionalString(w, "text_var", where);
  return out;
}

std::vector<propdsl::SelectorClause> ParseKey(const json& key,
                                              const std::string& where) {
  if (!key.is_object() || key.empty()) {
    Schema(where + ": widget key must be a non-empty object");
  }
  std::vector<propdsl::SelectorClause> clauses;
  for (const auto& [name, value] : key.items()) {
    const auto field = propdsl::FieldFromName(name);
    if (!field) Schema(where + ": unknown widget field \"" + name + "\"");
    if (!value.is_string()) Schema(where + ": widget key values must be strings");
    clauses.push_back({*field, value.get<std::string>()});
  }
  return clauses;
}

// A key clause on text also accepts widgets whose text is dynamic, since
// their text is only known at run time.
bool KeyCanMatch(const std::vector<propdsl::SelectorClause>& key, const SimWidget& w) {
  const auto view = propdsl::ViewOf(w.attributes);
  for (const auto& c : key) {
    if (c.field == propdsl::Field::kText && w.text_var) continue;
    if (!propdsl::ClauseMatches(c, propdsl::MatchMode::kExact, view)) return false;
  }
  return true;
}

}  // namespace

AppModel AppModelFromJson(const json& doc) {
  if (!doc.is_object()) Schema("app model must be a JSON object");
  AppModel m;
  m.app_name = doc.value("app", std::string("App"));
  if (!doc.contains("initial") || !doc["initial"].is_string()) {
    Schema("app model needs a string \"initial\"");
  }
  m.initial_screen = doc["initial"];

  if (doc.contains("state")) {
    if (!doc["state"].is_object()) Schema("\"state\" must be an object");
    for (const auto& [k, v] : doc["state"].items()) {
      if (!v.is_string()) Schema("state var \"" + k + "\" must be a string");
      m.state_vars[k] = v;
    }
  }

  if (!doc.contains("screens") || !doc["screens"].is_object() ||
      doc["screens"].empty()) {
    Schema("app model needs a non-empty \"screens\" object");
  }
  for (const auto& [id, list] : doc["screens"].items()) {
    if (!list.is_array()) Schema("screen \"" + id + "\" must be an array");
    auto& widgets = m.screens[id];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "screen \"" + id + "\" widget " + std::to_string(i);
      widgets.push_back(ParseWidget(list[i], where, static_cast<int>(i)));
      const auto& var = widgets.back().text_var;
      if (var && !m.state_vars.count(*var)) {
        Dangling(where + ": text_var \"" + *var + "\" is not a state var");
      }
    }
  }
  if (!m.screens.count(m.initial_screen)) {
    Dangling("initial screen \"" + m.initial_screen + "\" does not exist");
  }

  if (doc.contains("activities")) {
    if (!doc["activities"].is_object()) Schema("\"activities\" must be an object");
    for (const auto& [screen, act] : doc["activities"].items()) {
      if (!m.screens.count(screen)) {
        Dangling("activity for unknown screen \"" + screen + "\"");
      }
      if (!act.is_string()) Schema("activity names must be strings");
      m.activities[screen] = act;
    }
  }

  const json transitions = doc.value("transitions", json::array());
  if (!transitions.is_array()) Schema("\"transitions\" must be an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const json& t = transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (!t.is_object()) Schema(where + " must be an object");
    Transition tr;
    if (!t.contains("screen") || !t["screen"].is_string()) {
      Schema(where + " needs a string \"screen\"");
    }
    tr.screen = t["screen"];
    if (!m.screens.count(tr.screen)) {
      Dangling(where + ": screen \"" + tr.screen + "\" does not exist");
    }
    if (!t.contains("action") || !t["action"].is_string()) {
      Schema(where + " needs a string \"action\"");
    }
    tr.action = propdsl::ActionFromName(t["action"].get<std::string>());
    if (tr.action == propdsl::ActionKind::kUnknown ||
        tr.action == propdsl::ActionKind::kWait) {
      Schema(where + ": unsupported action \"" + t["action"].get<std::string>() + "\"");
    }
    if (tr.action == propdsl::ActionKind::kPressBack) {
      if (t.contains("widget")) Schema(where + ": press_back takes no widget");
    } else {
      if (!t.contains("widget")) Schema(where + " needs a \"widget\" key");
      tr.widget = ParseKey(t["widget"], where);
      bool found = false;
      for (const auto& w : m.screens[tr.screen]) found = found || KeyCanMatch(tr.widget, w);
      if (!found) {
        Dangling(where + ": no widget on \"" + tr.screen + "\" matches its key");
      }
    }
    const json effects = t.value("effects", json::array());
    if (!effects.is_array()) Schema(where + ": \"effects\" must be an array");
    for (const auto& e : effects) {
      Effect eff;
      if (e.is_object() && e.size() == 1 && e.contains("goto") && e["goto"].is_string()) {
        eff.kind = Effect::Kind::kGoto;
        eff.screen = e["goto"];
        if (!m.screens.count(eff.screen)) {
          Dangling(where + ": goto target \"" + eff.screen + "\" does not exist");
        }
      } else if (e.is_object() && e.size() == 1 && e.contains("set") &&
                 e["set"].is_object() && e["set"].contains("var") &&
                 e["set"]["var"].is_string() && e["set"].contains("value") &&
                 e["set"]["value"].is_string()) {
        eff.kind = Effect::Kind::kSet;
        eff.var = e["set"]["var"];
        eff.value = e["set"]["value"];
        if (!m.state_vars.count(eff.var)) {
          Dangling(where + ": state var \"" + eff.var + "\" does not exist");
        }
      } else {
        Schema(where + ": effect must be {\"goto\": id} or {\"set\": {var, value}}");
      }
      tr.effects.push_back(std::move(eff));
    }
    m.transitions.push_back(std::move(tr));
  }
  return m;
}

AppModel LoadAppModel(const std::filesystem::path& path) {
  const json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) Schema(path.string() + " is not valid JSON");
  return AppModelFromJson(doc);
}

std::string ActivityOf(const AppModel& model, const std::string& screen) {
  const auto it = model.activities.find(screen);
  return it == model.activities.end() ? screen : it->second;
}

}  // namespace propforge::simulator
