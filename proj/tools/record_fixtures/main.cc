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

// Turns scripted model replies into mock-provider fixtures.
//
// For each description in <workspace>/descriptions, the replies listed in
// <responses>/<name>.json ({"responses": [...]}) are played back in order
// through the real synthesis loop. Every prompt the loop sends is keyed and
// stored with the reply it received, so `synthesize --mock` later sees the
// same conversation, repair turns included.
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "propforge/cli/workspace.h"
#include "propforge/common/file_io.h"
#include "propforge/grounding/context_store.h"
#include "propforge/llm/prompt.h"
#include "propforge/synthesis/description.h"
#include "propforge/synthesis/synthesizer.h"

namespace {

class ScriptedProvider : public propforge::llm::ChatProvider {
 public:
  explicit ScriptedProvider(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  std::string Complete(const propforge::llm::ChatRequest& request) override {
    if (next_ >= replies_.size()) {
      throw propforge::Error(propforge::ErrorCode::kProviderError, "script exhausted");
    }
    const std::string& reply = replies_[next_++];
    recorded_[propforge::llm::PromptKey(request.messages)] = reply;
    return reply;
  }
  std::string model() const override { return "mock"; }

  const std::map<std::string, std::string>& recorded() const { return recorded_; }
  std::size_t used() const { return next_; }
  std::size_t size() const { return replies_.size(); }

 private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
  std::map<std::string, std::string> recorded_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"record mock-provider fixtures from scripted replies"};
  std::string workspace, responses, data_dir = PROPFORGE_DATA_DIR;
  app.add_option("--workspace,-w", workspace)->required()->check(CLI::ExistingDirectory);
  app.add_option("--responses", responses)->required()->check(CLI::ExistingDirectory);
  app.add_option("--data-dir", data_dir);
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  const propforge::cli::Workspace ws{workspace};
  try {
    const auto config = propforge::cli::ConfigFromEnv(data_dir);
    const auto store = propforge::grounding::LoadStore(ws.context());
    int failures = 0;
    for (const auto& path : propforge::cli::ListFiles(ws.descriptions(), ".txt")) {
      const std::string name = path.stem().string();
      const fs::path script = fs::path(responses) / (name + ".json");
      if (!fs::exists(script)) {
        std::cerr << "skip " << name << ": no " << script << "\n";
        continue;
      }
      const auto doc = nlohmann::json::parse(propforge::ReadFile(script));
      ScriptedProvider provider(doc.at("responses").get<std::vector<std::string>>());
      const auto desc = propforge::synthesis::LoadDescriptionFile(path);
      propforge::synthesis::SynthesisOptions options;
      options.repair_budget = config.repair_budget;
      options.store = &store;
      try {
        const auto result = propforge::synthesis::Synthesize(
            provider, propforge::cli::WorkspacePrompt(config, store, desc), options);
        if (provider.used() != provider.size()) {
          std::cerr << name << ": " << provider.size() - provider.used()
                    << " scripted replies were never requested\n";
          ++failures;
        }
        std::cout << name << ": retries " << result.retries_used << "\n";
      } catch (const propforge::Error& e) {
        std::cerr << name << ": " << e.what() << "\n";
        ++failures;
      }
      nlohmann::json out(provider.recorded());
      propforge::WriteFileAtomic(ws.fixtures() / (name + ".json"), out.dump(2) + "\n");
    }
    return failures == 0 ? 0 : 1;
  } catch (const propforge::Error& e) {
    std::cerr << "record_fixtures: " << e.what() << "\n";
    return propforge::cli::ExitCodeFor(e.code());
  }
}
