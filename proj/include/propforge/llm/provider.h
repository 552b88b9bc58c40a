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

#ifndef PROPFORGE_LLM_PROVIDER_H_
#define PROPFORGE_LLM_PROVIDER_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "propforge/llm/prompt.h"

namespace propforge::llm {

struct ChatRequest {
  std::string model;
  double temperature = 0.0;
  PromptMessages messages;
};

// A chat-completion backend. Implementations must be safe to call from
// several threads at once. Transport failures throw Error(kProviderError).
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual std::string Complete(const ChatRequest& request) = 0;
  virtual std::string model() const = 0;
};

struct OpenAiConfig {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string api_key;
  std::string model;
  int timeout_seconds = 120;
};

// Reads PF_LLM_BASE_URL and PF_LLM_API_KEY plus the named model variable
// (PF_LLM_MODEL or PF_MLLM_MODEL). Throws Error(kInvalidArgument) when the
// base URL or model is unset.
OpenAiConfig OpenAiConfigFromEnv(const char* model_env_var);

// Builds the chat-completions request body. Images become base64 PNG data
// URLs in OpenAI "image_url" content parts.
nlohmann::json BuildChatCompletionBody(const ChatRequest& request);

// Extracts choices[0].message.content. Throws Error(kProviderError).
std::string ParseChatCompletionResponse(const std::string& body);

// OpenAI-compatible chat completions over HTTP(S).
class OpenAiProvider : public ChatProvider {
 public:
  explicit OpenAiProvider(OpenAiConfig config);
  std::string Complete(const ChatRequest& request) override;
  std::string model() const override { return config_.model; }

 private:
  OpenAiConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

// Answers from canned responses keyed by PromptKey(request.messages). Loads
// every fixtures/*.json file, each a JSON object mapping hex key -> response.
// Merges every *.json object in `dir` (sorted by name) into one
// prompt-key -> response map. Throws ProviderError on malformed files.
std::map<std::string, std::string> LoadFixtureMap(const std::filesystem::path& dir);

class MockProvider : public ChatProvider {
 public:
  MockProvider() = default;
  explicit MockProvider(std::map<std::string, std::string> responses,
                        std::string model_name = "mock");
  static MockProvider FromDirectory(const std::filesystem::path& dir);

  std::string Complete(const ChatRequest& request) override;
  std::string model() const override { return model_name_; }

  int calls() const;

 private:
  std::map<std::string, std::string> responses_;
  std::string model_name_ = "mock";
  mutable std::mutex mu_;
  int calls_ = 0;
};

}  // namespace propforge::llm

#endif  // PROPFORGE_LLM_PROVIDER_H_
