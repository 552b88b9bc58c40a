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

// Scripted app models: screens of widgets plus transitions triggered by
// actions on those widgets.
//
// JSON form:
//   {"app": "Amaze", "initial": "file_list", "state": {"path": "/sdcard"},
//    "activities": {"file_list": "MainActivity"},
//    "screens": {"file_list": [{"text": "Download", "id": "...",
//                               "desc": "...", "class": "...",
//                               "clickable": true, "text_var": "path"}]},
//    "transitions": [{"screen": "file_list", "widget": {"text": "Download"},
//                     "action": "click",
//                     "effects": [{"goto": "dir_view"},
//                                 {"set": {"var": "path", "value": "${path}/$text"}}]}]}
//
// Effect values may reference state as ${var}, the clicked widget's text as
// $text and a set_text payload as $input.
#ifndef PROPFORGE_SIMULATOR_APP_MODEL_H_
#define PROPFORGE_SIMULATOR_APP_MODEL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/capture/widget.h"
#include "propforge/propdsl/ast.h"
#include "propforge/propdsl/selector.h"

namespace propforge::simulator {

struct SimWidget {
  capture::WidgetAttributes attributes;
  // When set, the displayed text is the current value of this state var.
  std::optional<std::string> text_var;

  bool operator==(const SimWidget&) const = default;
};

struct Effect {
  enum class Kind { kGoto, kSet };
  Kind kind = Kind::kGoto;
  std::string screen;  // kGoto
  std::string var;     // kSet
  std::string value;   // kSet, with substitutions

  bool operator==(const Effect&) const = default;
};

struct Transition {
  std::string screen;
  // Exact clauses the acted-on widget must satisfy; empty for press_back.
  std::vector<propdsl::SelectorClause> widget;
  propdsl::ActionKind action = propdsl::ActionKind::kClick;
  std::vector<Effect> effects;

  bool operator==(const Transition&) const = default;
};

struct AppModel {
  std::string app_name;
  std::string initial_screen;
  std::map<std::string, std::string> state_vars;
  std::map<std::string, std::vector<SimWidget>> screens;
  std::map<std::string, std::string> activities;  // screen -> activity name
  std::vector<Transition> transitions;

  bool operator==(const AppModel&) const = default;
};

// Throws SchemaError for shape problems and DanglingReference for names that
// do not resolve (screens, state vars, transition widget keys).
AppModel AppModelFromJson(const nlohmann::json& doc);
AppModel LoadAppModel(const std::filesystem::path& path);

std::string ActivityOf(const AppModel& model, const std::string& screen);

}  // namespace propforge::simulator

#endif  // PROPFORGE_SIMULATOR_APP_MODEL_H_
