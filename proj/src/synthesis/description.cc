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

#include "propforge/synthesis/description.h"

#include <cctype>
#include <optional>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/common/text.h"

namespace propforge::synthesis {
namespace {

// Drops markdown emphasis so "**Precondition**:" reads as a header.
std::string StripEmphasis(std::string_view line) {
  std::string out;
  for (char c : line) {
    if (c != '*') out += c;
  }
  return out;
}

// Returns the text after "<header>:" when the line opens with the header.
std::optional<std::string> HeaderRest(std::string_view line,
                                      std::string_view header) {
  const std::string plain = StripEmphasis(line);
  std::string_view s = Trim(plain);
  if (!StartsWithIgnoreCase(s, header)) return std::nullopt;
  s.remove_prefix(header.size());
  s = Trim(s);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  return std::string(Trim(s));
}

// "12. text" or "12) text" -> "text".
std::optional<std::string> NumberedStep(std::string_view line) {
  std::string_view s = Trim(line);
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i >= s.size() || (s[i] != '.' && s[i] != ')')) {
    return std::nullopt;
  }
  return std::string(Trim(s.substr(i + 1)));
}

}  // namespace

PropertyDescription ParseDescription(std::string_view text, std::string name) {
  enum class Segment { kNone, kPrecondition, kBody };
  Segment segment = Segment::kNone;
  bool saw_pre = false;
  bool saw_body = false;
  std::vector<std::string> pre_parts;
  PropertyDescription desc;
  desc.name = std::move(name);

  for (const std::string& raw : SplitLines(text)) {
    if (auto rest = HeaderRest(raw, "precondition")) {
      segment = Segment::kPrecondition;
      saw_pre = true;
      if (!rest->empty()) pre_parts.push_back(*rest);
      continue;
    }
    if (auto rest = HeaderRest(raw, "function body")) {
      segment = Segment::kBody;
      saw_body = true;
      if (!rest->empty()) {
        if (auto step = NumberedStep(*rest)) desc.steps.push_back(*step);
      }
      continue;
    }
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (segment == Segment::kPrecondition) {
      pre_parts.emplace_back(line);
    } else if (segment == Segment::kBody) {
      if (auto step = NumberedStep(line)) {
        desc.steps.push_back(*step);
      } else if (!desc.steps.empty()) {
        desc.steps.back() += " " + std::string(line);
      }
    }
  }

  if (!saw_pre) {
    throw Error(ErrorCode::kMissingSegment, "no \"Precondition:\" header");
  }
  if (!saw_body) {
    throw Error(ErrorCode::kMissingSegment, "no \"Function body:\" header");
  }
  desc.precondition_text = Join(pre_parts, " ");
  if (desc.precondition_text.empty()) {
    throw Error(ErrorCode::kMissingSegment, "precondition segment is empty");
  }
  for (auto& s : desc.steps) s = std::string(Trim(s));
  std::erase_if(desc.steps, [](const std::string& s) { return s.empty(); });
  if (desc.steps.empty()) {
    throw Error(ErrorCode::kEmptySteps, "function body has no numbered steps");
  }
  return desc;
}

PropertyDescription LoadDescriptionFile(const std::filesystem::path& path) {
  return ParseDescription(ReadFile(path), path.stem().string());
}

std::string FormatDescription(const PropertyDescription& desc) {
  std::string out = "Precondition: " + desc.precondition_text + "\nFunction body:\n";
  for (std::size_t i = 0; i < desc.steps.size(); ++i) {
    out += std::to_string(i + 1) + ". " + desc.steps[i] + "\n";
  }
  return out;
}

std::vector<std::string> DescriptionLines(const PropertyDescription& desc) {
  std::vector<std::string> lines = {desc.precondition_text};
  lines.insert(lines.end(), desc.steps.begin(), desc.steps.end());
  return lines;
}

}  // namespace propforge::synthesis
