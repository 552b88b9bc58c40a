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

// Renders a property into another script dialect by pattern substitution.
//
// A template is a JSON object {"name": ..., "nodes": {key: pattern}}. In a
// pattern, `{word}` is replaced by the named value when the node supplies one
// and left alone otherwise. A placeholder that starts a line after only
// whitespace indents every line of a multi-line value by that whitespace;
// if the value is empty the whole line is dropped.
//
// Keys and the values they receive:
//   property        name, pre, run, post
//   assert          expr
//   let_all         var, selector
//   let_pick        var, element, source, predicate
//   if, if_else     cond, then, else
//   click, long_click, set_text, press_back, wait, unknown_action
//                   target, text, ms, seconds, name, args
//   selector, selector_contains                clauses
//   clause.<field>, clause_contains.<field>    value (a quoted literal)
//   clause_sep
//   var             name
//   attr.<field> or attr                       target, field
//   exists          target
//   contains, startswith, equals               lhs, rhs
//   not             operand
//   and_sep, or_sep, group (expr)
//   string, number  value
//   true, false

#ifndef PROPFORGE_PROPDSL_EMITTER_H_
#define PROPFORGE_PROPDSL_EMITTER_H_

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "propforge/propdsl/ast.h"

namespace propforge::propdsl {

struct EmissionTemplate {
  std::string name;
  std::map<std::string, std::string> nodes;
};

// Throws SchemaError when the object lacks a "nodes" map of strings.
EmissionTemplate TemplateFromJson(const nlohmann::json& j);
EmissionTemplate LoadTemplate(const std::filesystem::path& path);

// Throws UnsupportedNode naming the first key the AST needs and the template
// lacks.
std::string EmitFrameworkScript(const PropertyAST& ast,
                                const EmissionTemplate& tmpl);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_EMITTER_H_
