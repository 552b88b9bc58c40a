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

// Structured natural-language property descriptions: a precondition segment
// followed by a numbered function body.
//
//   Precondition: The list item and search button exist
//   Function body:
//   1. Get the names of all items
//   2. Select an item name that does not contain "."
//   3. Click it
//   4. Assert the path contains the item name
#ifndef PROPFORGE_SYNTHESIS_DESCRIPTION_H_
#define PROPFORGE_SYNTHESIS_DESCRIPTION_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace propforge::synthesis {

struct PropertyDescription {
  std::string name;
  std::string precondition_text;
  std::vector<std::string> steps;

  bool operator==(const PropertyDescription&) const = default;
};

// Throws MissingSegment when either header is absent or the precondition is
// blank, and EmptySteps when the function body has no numbered step.
PropertyDescription ParseDescription(std::string_view text,
                                     std::string name = "");

// The file stem becomes the property name.
PropertyDescription LoadDescriptionFile(const std::filesystem::path& path);

// Canonical text form; ParseDescription(FormatDescription(d)) == d.
std::string FormatDescription(const PropertyDescription& desc);

// Precondition followed by the steps, one entry per line.
std::vector<std::string> DescriptionLines(const PropertyDescription& desc);

}  // namespace propforge::synthesis

#endif  // PROPFORGE_SYNTHESIS_DESCRIPTION_H_
