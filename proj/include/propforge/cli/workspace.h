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

// Workspace layout and pipeline configuration shared by every command.
//
//   <root>/captures/<page>/{app.json,dump.xml,*.png}
//   <root>/context.json          written by `context build`
//   <root>/descriptions/*.txt    structured property descriptions
//   <root>/properties/*.prop     written by `synthesize`
//   <root>/ground_truth/*.prop   reference properties for `check`
//   <root>/models/               app models and assignments.json
//   <root>/fixtures/*.json       mock provider responses
//   <root>/reports/              written by `check` and `paraphrase`
#ifndef PROPFORGE_CLI_WORKSPACE_H_
#define PROPFORGE_CLI_WORKSPACE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "propforge/common/error.h"
#include "propforge/grounding/context_store.h"
#include "propforge/llm/provider.h"
#include "propforge/synthesis/prompt_builder.h"

namespace propforge::cli {

namespace fs = std::filesystem;

struct Workspace {
  fs::path root;

  fs::path captures() const { return root / "captures"; }
  fs::path context() const { return root / "context.json"; }
  fs::path descriptions() const { return root / "descriptions"; }
  fs::path properties() const { return root / "properties"; }
  fs::path ground_truth() const { return root / "ground_truth"; }
  fs::path models() const { return root / "models"; }
  fs::path fixtures() const { return root / "fixtures"; }
  fs::path reports() const { return root / "reports"; }
  fs::path lock_file() const { return root / ".propforge.lock"; }
};

// Held for the duration of a command; a second holder gets WorkspaceLocked.
class WorkspaceLock {
 public:
  explicit WorkspaceLock(const Workspace& ws);
  ~WorkspaceLock();
  WorkspaceLock(const WorkspaceLock&) = delete;
  WorkspaceLock& operator=(const WorkspaceLock&) = delete;

 private:
  fs::path path_;
};

enum class AnnotatorChoice { kHeuristic, kMllm };

struct PipelineConfig {
  fs::path data_dir;
  std::size_t context_budget = synthesis::kDefaultContextBudget;
  int repair_budget = 2;
  std::size_t concurrency = 4;
  AnnotatorChoice annotator = AnnotatorChoice::kHeuristic;
  // Use recorded fixtures instead of a live endpoint.
  bool mock = false;
  std::optional<fs::path> fixtures_dir;  // defaults to the workspace's
};

// Defaults plus PF_CONCURRENCY. Endpoint settings and keys stay in the
// environment and are read only when a live provider is built.
PipelineConfig ConfigFromEnv(fs::path data_dir);

// Mock provider over the fixture directory, or an OpenAI-compatible client
// configured from PF_LLM_BASE_URL, PF_LLM_API_KEY and `model_env_var`.
std::unique_ptr<llm::ChatProvider> MakeProvider(const Workspace& ws,
                                                const PipelineConfig& config,
                                                const char* model_env_var);

// Files in `dir` with the given extension, sorted by name.
std::vector<fs::path> ListFiles(const fs::path& dir, const std::string& extension);

// The exact prompt `synthesize` sends for one description.
synthesis::PromptBundle WorkspacePrompt(const PipelineConfig& config,
                                        const grounding::WidgetContextStore& store,
                                        const synthesis::PropertyDescription& desc);
synthesis::PromptBundle WorkspacePrompt(const Workspace& ws, const PipelineConfig& config,
                                        const synthesis::PropertyDescription& desc);

// 2 for usage and configuration errors, 1 for everything else.
int ExitCodeFor(ErrorCode code);

}  // namespace propforge::cli

#endif  // PROPFORGE_CLI_WORKSPACE_H_
