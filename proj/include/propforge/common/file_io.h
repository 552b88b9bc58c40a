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

#ifndef PROPFORGE_COMMON_FILE_IO_H_
#define PROPFORGE_COMMON_FILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace propforge {

// Throws Error(kIo) when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written file. Creates parent directories.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_FILE_IO_H_
