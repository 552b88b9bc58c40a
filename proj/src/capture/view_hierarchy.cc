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

#include "propforge/capture/view_hierarchy.h"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <regex>
#include <sstream>

#include "propforge/common/error.h"

namespace propforge::capture {
namespace {

namespace pt = boost::property_tree;

std::optional<std::string> OptionalAttr(const pt::ptree& attrs,
                                        const char* name) {
  auto value = attrs.get_optional<std::string>(name);
  if (!value || value->empty()) return std::nullopt;
  return *value;
}

void CollectNodes(const pt::ptree& element,
                  std::vector<WidgetAttributes>& out) {
  for (const auto& [tag, child] : element) {
    if (tag != "node") {
      if (tag != "<xmlattr>" && tag != "<xmlcomment>") CollectNodes(child, out);
      continue;
    }
    static const pt::ptree kEmpty;
    const auto attrs_opt = child.get_child_optional("<xmlattr>");
    const pt::ptree& attrs = attrs_opt ? *attrs_opt : kEmpty;

    WidgetAttributes w;
    w.node_index = static_cast<int>(out.size());
    w.text = OptionalAttr(attrs, "text");
    w.resource_id = OptionalAttr(attrs, "resource-id");
    w.content_description = OptionalAttr(attrs, "content-desc");
    w.class_name = attrs.get<std::string>("class", "");
    if (w.class_name.empty()) {
      throw Error(ErrorCode::kMalformedDocument,
                  "node " + std::to_string(w.node_index) + " has no class");
    }
    w.clickable = attrs.get<std::string>("clickable", "false") == "true";
    w.bounds = ParseBounds(attrs.get<std::string>("bounds", ""));
    out.push_back(std::move(w));
    CollectNodes(child, out);
  }
}

void AppendEscaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      default: out.push_back(c);
    }
  }
}

}  // namespace

Bounds ParseBounds(std::string_view text) {
  static const std::regex kPattern(R"(\[(\d+),(\d+)\]\[(\d+),(\d+)\])");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, kPattern)) {
    throw Error(ErrorCode::kMalformedBounds,
                "expected [l,t][r,b], got \"" + std::string(text) + "\"");
  }
  int v[4];
  for (int i = 0; i < 4; ++i) {
    const auto& g = m[i + 1];
    const char* first = &*g.first;
    const char* last = first + g.length();
    auto [ptr, ec] = std::from_chars(first, last, v[i]);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::kMalformedBounds,
                  "coordinate out of range in \"" + std::string(text) + "\"");
    }
  }
  Bounds b{v[0], v[1], v[2], v[3]};
  if (b.left > b.right || b.top > b.bottom) {
    throw Error(ErrorCode::kMalformedBounds,
                "inverted rectangle \"" + std::string(text) + "\"");
  }
  return b;
}

std::string FormatBounds(const Bounds& b) {
  return "[" + std::to_string(b.left) + "," + std::to_string(b.top) + "][" +
         std::to_string(b.right) + "," + std::to_string(b.bottom) + "]";
}

std::vector<WidgetAttributes> ParseViewHierarchy(std::string_view xml_text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml_text)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::kMalformedDocument, e.what());
  }
  if (tree.empty()) {
    throw Error(ErrorCode::kMalformedDocument, "document has no root element");
  }
  std::vector<WidgetAttributes> widgets;
  CollectNodes(tree, widgets);
  return widgets;
}

bool IsInteractive(const WidgetAttributes& w) {
  return w.text || w.resource_id || w.content_description || w.clickable;
}

std::string WriteViewHierarchy(const std::vector<WidgetAttributes>& widgets) {
  std::string out =
      "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n"
      "<hierarchy rotation=\"0\">\n";
  for (const auto& w : widgets) {
    out += "  <node index=\"" + std::to_string(w.node_index) + "\" text=\"";
    AppendEscaped(out, w.text.value_or(""));
    out += "\" resource-id=\"";
    AppendEscaped(out, w.resource_id.value_or(""));
    out += "\" class=\"";
    AppendEscaped(out, w.class_name);
    out += "\" content-desc=\"";
    AppendEscaped(out, w.content_description.value_or(""));
    out += "\" clickable=\"";
    out += w.clickable ? "true" : "false";
    out += "\" bounds=\"" + FormatBounds(w.bounds) + "\" />\n";
  }
  out += "</hierarchy>\n";
  return out;
}

}  // namespace propforge::capture
