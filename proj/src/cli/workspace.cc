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

#include "propforge/cli/workspace.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "propforge/common/file_io.h"

namespace propforge::cli {

WorkspaceLock::WorkspaceLock(const Workspace& ws) : path_(ws.lock_file()) {
  fs::create_directories(ws.root);
  const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw Error(ErrorCode::kWorkspaceLocked,
                  "another command holds " + path_.string() +
                      " (delete it if no command is running)");
    }
    throw Error(ErrorCode::kIo, "cannot create " + path_.string() + ": " +
                                    std::strerror(errno));
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] const auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

WorkspaceLock::~WorkspaceLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

PipelineConfig ConfigFromEnv(fs::path data_dir) {
  PipelineConfig config;
  config.data_dir = std::move(data_dir);
  if (const char* c = std::getenv("PF_CONCURRENCY"); c && *c) {
    char* end = nullptr;
    const long n = std::strtol(c, &end, 10);
    if (*end != '\0' || n < 1) {
      throw Error(ErrorCode::kInvalidArgument, "PF_CONCURRENCY must be a positive integer");
    }
    config.concurrency = static_cast<std::size_t>(n);
  }
  return config;
}

std::unique_ptr<llm::ChatProvider> MakeProvider(const Workspace& ws,
                                                const PipelineConfig& config,
                                                const char* model_env_var) {
  if (config.mock) {
    const fs::path dir = config.fixtures_dir.value_or(ws.fixtures());
    return std::make_unique<llm::MockProvider>(llm::LoadFixtureMap(dir));
  }
  return std::make_unique<llm::OpenAiProvider>(llm::OpenAiConfigFromEnv(model_env_var));
}

std::vector<fs::path> ListFiles(const fs::path& dir, const std::string& extension) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == extension) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

synthesis::PromptBundle WorkspacePrompt(const Workspace& ws, const PipelineConfig& config,
                                        const synthesis::PropertyDescription& desc) {
  return WorkspacePrompt(config, grounding::LoadStore(ws.context()), desc);
}

synthesis::PromptBundle WorkspacePrompt(const PipelineConfig& config,
                                        const grounding::WidgetContextStore& store,
                                        const synthesis::PropertyDescription& desc) {
  const auto context = synthesis::SelectContextSubset(desc, store, config.context_budget);
  return synthesis::BuildSynthesisPrompt(
      desc, context, ReadFile(config.data_dir / "api_catalog.txt"),
      synthesis::LoadSynthesisDemos(config.data_dir / "demos"));
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoCaptures:
    case ErrorCode::kMissingContext:
    case ErrorCode::kNameMismatch:
    case ErrorCode::kWorkspaceLocked:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kPoolTooSmall:
    case ErrorCode::kSchemaError:
    case ErrorCode::kDanglingReference:
    case ErrorCode::kMissingDemos:
      return 2;
    default:
      return 1;
  }
}

}  // namespace propforge::cli
