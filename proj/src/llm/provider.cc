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

#include "propforge/llm/provider.h"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <regex>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/hash.h"

namespace propforge::llm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

OpenAiConfig OpenAiConfigFromEnv(const char* model_env_var) {
  OpenAiConfig config;
  config.base_url = Env("PF_LLM_BASE_URL");
  config.api_key = Env("PF_LLM_API_KEY");
  config.model = Env(model_env_var);
  if (config.base_url.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "PF_LLM_BASE_URL is not set");
  }
  if (config.model.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(model_env_var) + " is not set");
  }
  return config;
}

json BuildChatCompletionBody(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    json msg = {{"role", m.role}};
    if (m.attachments.empty()) {
      msg["content"] = m.text;
    } else {
      json parts = json::array();
      parts.push_back({{"type", "text"}, {"text", m.text}});
      for (const auto& a : m.attachments) {
        const auto png = capture::EncodePng(a.image);
        parts.push_back(
            {{"type", "image_url"},
             {"image_url",
              {{"url", "data:image/png;base64," + Base64Encode(png)}}}});
      }
      msg["content"] = std::move(parts);
    }
    messages.push_back(std::move(msg));
  }
  return {{"model", request.model},
          {"temperature", request.temperature},
          {"messages", std::move(messages)}};
}

std::string ParseChatCompletionResponse(const std::string& body) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kProviderError, "response is not JSON");
  }
  try {
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProviderError,
                std::string("unexpected response shape: ") + e.what());
  }
}

OpenAiProvider::OpenAiProvider(OpenAiConfig config) : config_(std::move(config)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.base_url, m, kUrl)) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed base URL: " + config_.base_url);
  }
  scheme_host_port_ = m[1];
  path_prefix_ = m[2];
  while (!path_prefix_.empty() && path_prefix_.back() == '/') {
    path_prefix_.pop_back();
  }
}

std::string OpenAiProvider::Complete(const ChatRequest& request) {
  ChatRequest req = request;
  if (req.model.empty()) req.model = config_.model;
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const auto result =
      client.Post(path_prefix_ + "/chat/completions", headers,
                  BuildChatCompletionBody(req).dump(), "application/json");
  if (!result) {
    throw Error(ErrorCode::kProviderError,
                "transport failure: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kProviderError,
                "HTTP " + std::to_string(result->status) + ": " +
                    result->body.substr(0, 200));
  }
  return ParseChatCompletionResponse(result->body);
}

MockProvider::MockProvider(std::map<std::string, std::string> responses,
                           std::string model_name)
    : responses_(std::move(responses)), model_name_(std::move(model_name)) {}

std::map<std::string, std::string> LoadFixtureMap(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".json") {
        files.push_back(e.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::string> responses;
  for (const auto& f : files) {
    json doc = json::parse(ReadFile(f), nullptr, false);
    if (!doc.is_object()) {
      throw Error(ErrorCode::kProviderError,
                  "fixture " + f.string() + " is not a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::kProviderError,
                    "fixture " + f.string() + " key " + key + " is not a string");
      }
      responses.emplace(key, value.get<std::string>());
    }
  }
  return responses;
}

MockProvider MockProvider::FromDirectory(const fs::path& dir) {
  return MockProvider(LoadFixtureMap(dir));
}

std::string MockProvider::Complete(const ChatRequest& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
  }
  const std::string key = PromptKey(request.messages);
  auto it = responses_.find(key);
  if (it == responses_.end()) {
    throw Error(ErrorCode::kProviderError, "no fixture for prompt " + key);
  }
  return it->second;
}

int MockProvider::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

}  // namespace propforge::llm
