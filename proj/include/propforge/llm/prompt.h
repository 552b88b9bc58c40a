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

#ifndef PROPFORGE_LLM_PROMPT_H_
#define PROPFORGE_LLM_PROMPT_H_

#include <string>
#include <vector>

#include "propforge/capture/raster.h"

namespace propforge::llm {

struct ImageAttachment {
  std::string label;  // e.g. "page screenshot (target in red box)"
  capture::RasterImage image;

  bool operator==(const ImageAttachment&) const = default;
};

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string text;
  std::vector<ImageAttachment> attachments;
  // Which numbered prompt component this message carries (1-based); 0 for
  // messages added after the prompt was built, such as repair turns.
  int component = 0;
  std::string component_name;

  bool operator==(const ChatMessage&) const = default;
};

using PromptMessages = std::vector<ChatMessage>;

// Canonical, byte-deterministic text form of a message list. Attachments are
// rendered as a descriptor line carrying the SHA-256 of their raw RGBA pixels,
// so the form stays stable across PNG encoder versions. This text is what
// golden files record and what the mock provider hashes.
std::string SerializePrompt(const PromptMessages& messages);

// SHA-256 of SerializePrompt(messages).
std::string PromptKey(const PromptMessages& messages);

}  // namespace propforge::llm

#endif  // PROPFORGE_LLM_PROMPT_H_
