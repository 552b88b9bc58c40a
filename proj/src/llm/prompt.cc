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

#include "propforge/llm/prompt.h"

#include "propforge/common/hash.h"

namespace propforge::llm {

std::string SerializePrompt(const PromptMessages& messages) {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const ChatMessage& m = messages[i];
    out += "=== message " + std::to_string(i) + " | role=" + m.role;
    if (m.component > 0) {
      out += " | component=" + std::to_string(m.component) + ":" +
             m.component_name;
    }
    out += " ===\n";
    out += m.text;
    if (m.text.empty() || m.text.back() != '\n') out += '\n';
    for (const auto& a : m.attachments) {
      out += "[attachment image/png " + std::to_string(a.image.width()) + "x" +
             std::to_string(a.image.height()) + " rgba-sha256=" +
             Sha256Hex(a.image.pixels()) + " label=\"" + a.label + "\"]\n";
    }
  }
  return out;
}

std::string PromptKey(const PromptMessages& messages) {
  return Sha256Hex(SerializePrompt(messages));
}

}  // namespace propforge::llm
