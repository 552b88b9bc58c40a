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

#ifndef PROPFORGE_PROPDSL_PARSER_H_
#define PROPFORGE_PROPDSL_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "propforge/common/error.h"
#include "propforge/propdsl/ast.h"

namespace propforge::propdsl {

// Raised for any lexical or syntactic problem. `expected` lists the tokens
// that would have been accepted at the failure point, sorted.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected,
             std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

// Grammar (comments start with // and run to end of line):
//
//   property  := "property" IDENT "{" "pre" "{" expr "}"
//                "run" "{" stmt* "}" "post" "{" ("assert" expr)* "}" "}"
//   stmt      := "let" IDENT "=" "all" selector
//              | "let" IDENT "=" "pick" IDENT "in" IDENT "where" expr
//              | "if" expr "{" stmt* "}" ["else" "{" stmt* "}"]
//              | IDENT "(" [arg ("," arg)*] ")"
//   expr      := and ("or" and)*
//   and       := unary ("and" unary)*
//   unary     := "not" unary | primary
//   primary   := "(" expr ")" | STRING | NUMBER | "true" | "false"
//              | "exists" "(" target ")"
//              | "attr" "(" target "," FIELD ")"
//              | ("contains" | "startswith" | "equals") "(" expr "," expr ")"
//              | IDENT
//   target    := selector | IDENT
//   selector  := "widget" "(" clause ("," clause)* ")"
//   clause    := FIELD "=" STRING | "mode" "=" ("exact" | "contains")
//   FIELD     := "text" | "id" | "desc" | "class"
PropertyAST ParseProperty(std::string_view source);

// Words that cannot name a property or variable.
bool IsReservedWord(std::string_view word);

}  // namespace propforge::propdsl

#endif  // PROPFORGE_PROPDSL_PARSER_H_
