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

#ifndef PROPFORGE_GROUNDING_STORE_BUILDER_H_
#define PROPFORGE_GROUNDING_STORE_BUILDER_H_

#include <cstddef>
#include <vector>

#include "propforge/capture/widget.h"
#include "propforge/grounding/annotation.h"
#include "propforge/grounding/context_store.h"

namespace propforge::grounding {

inline constexpr std::size_t kDefaultAnnotationConcurrency = 4;

// Collects the interactive widgets of every capture, keeps the first
// occurrence of each dedup key, and annotates the survivors with at most
// `max_in_flight` concurrent annotator calls. Output order is capture order,
// then document order, regardless of concurrency. Throws Error(kMixedApps).
WidgetContextStore BuildContextStore(
    const std::vector<capture::PageCapture>& captures, Annotator& annotator,
    std::size_t max_in_flight = kDefaultAnnotationConcurrency);

}  // namespace propforge::grounding

#endif  // PROPFORGE_GROUNDING_STORE_BUILDER_H_
