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

#include "propforge/grounding/store_builder.h"

#include "propforge/capture/view_hierarchy.h"
#include "propforge/common/error.h"
#include "propforge/common/parallel.h"

namespace propforge::grounding {

WidgetContextStore BuildContextStore(
    const std::vector<capture::PageCapture>& captures, Annotator& annotator,
    std::size_t max_in_flight) {
  WidgetContextStore store;
  if (captures.empty()) return store;
  store.app_name = captures.front().app_name;
  for (const auto& page : captures) {
    if (page.app_name != store.app_name) {
      throw Error(ErrorCode::kMixedApps, "captures mix apps \"" +
                                             store.app_name + "\" and \"" +
                                             page.app_name + "\"");
    }
  }

  std::vector<const capture::PageCapture*> owners;
  for (const auto& page : captures) {
    for (const auto& w : page.widgets) {
      if (!capture::IsInteractive(w)) continue;
      EnrichedWidget entry;
      entry.uid = WidgetUid(page.capture_id, w.node_index);
      entry.attributes = w;
      entry.source_capture = page.capture_id;
      if (!store.dedup_index.emplace(DedupKey(w), entry.uid).second) continue;
      store.widgets.push_back(std::move(entry));
      owners.push_back(&page);
    }
  }

  ParallelFor(store.widgets.size(), max_in_flight, [&](std::size_t i) {
    store.widgets[i].annotation =
        annotator.Annotate(*owners[i], store.widgets[i].attributes);
  });
  return store;
}

}  // namespace propforge::grounding
