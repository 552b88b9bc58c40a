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

// Deterministic, LLM-free synthesis for descriptions written with a small
// step vocabulary. Every step must open with one of:
//
//   click <widget> | long click <widget> | input "<text>" into <widget>
//   press back | get <widgets> | select <item> that contains "<text>"
//   assert <widget> exists | assert <a> contains <b>
//   if <widget> exists, <step>[, otherwise <step>]
//
// Widget mentions are resolved with the phrase matcher over the context
// store; "it" refers to the most recently mentioned widget or selection.
#ifndef PROPFORGE_SYNTHESIS_BASELINE_H_
#define PROPFORGE_SYNTHESIS_BASELINE_H_

#include <string>
#include <string_view>

#include "propforge/grounding/context_store.h"
#include "propforge/propdsl/ast.h"
#include "propforge/synthesis/description.h"

namespace propforge::synthesis {

// Throws UnrecognizedStep for a step outside the vocabulary and
// UnresolvedWidget when a mention matches no widget in the store.
propdsl::PropertyAST BaselineSynthesize(const PropertyDescription& desc,
                                        const grounding::WidgetContextStore& store);

// Turns an arbitrary name into a legal, non-reserved property identifier.
std::string PropertyIdentifier(std::string_view name);

}  // namespace propforge::synthesis

#endif  // PROPFORGE_SYNTHESIS_BASELINE_H_
