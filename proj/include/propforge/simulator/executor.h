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

#ifndef PROPFORGE_SIMULATOR_EXECUTOR_H_
#define PROPFORGE_SIMULATOR_EXECUTOR_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "propforge/capture/widget.h"
#include "propforge/propdsl/ast.h"
#include "propforge/simulator/app_model.h"

namespace propforge::simulator {

struct SimState {
  std::string screen;
  std::map<std::string, std::string> vars;
  long clock_ms = 0;  // advanced by wait(); never sleeps
};

SimState InitialState(const AppModel& model);

// The screen's widgets with dynamic text filled in from state.
std::vector<capture::WidgetAttributes> RenderScreen(const AppModel& model,
                                                    const SimState& state);

// Widgets on the current screen satisfying the selector, in document order.
std::vector<capture::WidgetAttributes> EvaluateSelector(
    const AppModel& model, const SimState& state, const propdsl::Selector& sel);

enum class VerdictKind { kPassed, kViolated, kPreconditionUnsatisfied, kExecutionError };

std::string_view VerdictName(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::kPassed;
  std::string message;  // set for kExecutionError

  bool operator==(const Verdict&) const = default;
};

struct TraceEvent {
  propdsl::ActionKind action = propdsl::ActionKind::kClick;
  std::string widget;  // "screen[index]" of the acted-on widget, or ""
  std::string screen_before;
  std::string screen_after;

  bool operator==(const TraceEvent&) const = default;
};

struct AssertionResult {
  std::string expr;
  bool value = false;

  bool operator==(const AssertionResult&) const = default;
};

struct RunTrace {
  std::vector<TraceEvent> events;
  std::vector<AssertionResult> assertion_results;
  long clock_ms = 0;

  bool operator==(const RunTrace&) const = default;
};

struct RunResult {
  Verdict verdict;
  RunTrace trace;
};

// Evaluates pre on the initial screen, runs the interaction, then checks
// every assertion on the final screen. Runs start from a fresh state, so the
// model is never modified.
RunResult ExecuteProperty(const AppModel& model, const propdsl::PropertyAST& ast);

// One capture per distinct rendering reached by exploring the model from its
// initial state (clicks, long clicks and back; at most 64 states), plus the
// initial rendering of any screen the walk misses. Rows get synthetic bounds.
std::vector<capture::PageCapture> ExportCaptures(const AppModel& model);

// Writes each exported capture as <dir>/<NNN>_<screen>/{app.json,dump.xml},
// numbered in export order.
void WriteCaptureDirectories(const AppModel& model, const std::filesystem::path& dir);

}  // namespace propforge::simulator

#endif  // PROPFORGE_SIMULATOR_EXECUTOR_H_
