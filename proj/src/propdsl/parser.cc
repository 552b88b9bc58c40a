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

#include "propforge/propdsl/parser.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <utility>

#include "propforge/common/text.h"

namespace propforge::propdsl {
namespace {

constexpr int kMaxDepth = 200;

constexpr std::array<std::string_view, 24> kReserved = {
    "property", "pre",    "run",      "post",       "assert", "let",
    "all",      "pick",   "in",       "where",      "if",     "else",
    "and",      "or",     "not",      "true",       "false",  "widget",
    "exists",   "attr",   "contains", "startswith", "equals", "mode"};

enum class TokKind { kIdent, kString, kNumber, kPunct, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;  // identifier, decoded string, number spelling or punct
  SourcePos pos;
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case TokKind::kIdent: return "'" + t.text + "'";
    case TokKind::kString: return "string " + QuoteString(t.text);
    case TokKind::kNumber: return "number " + t.text;
    case TokKind::kPunct: return "'" + t.text + "'";
    case TokKind::kEnd: return "<end of input>";
  }
  return "?";
}

std::string Quoted(std::string_view word) {
  return "'" + std::string(word) + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpaceAndComments();
      Token t;
      t.pos = {line_, column_};
      if (at_ >= src_.size()) {
        out.push_back(std::move(t));
        return out;
      }
      const char c = src_[at_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = TokKind::kIdent;
        while (at_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[at_])) ||
                src_[at_] == '_')) {
          t.text.push_back(Advance());
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && at_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[at_ + 1])))) {
        t.kind = TokKind::kNumber;
        t.text.push_back(Advance());
        LexDigits(t.text);
        if (at_ + 1 < src_.size() && src_[at_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[at_ + 1]))) {
          t.text.push_back(Advance());
          LexDigits(t.text);
        }
      } else if (c == '"') {
        t.kind = TokKind::kString;
        LexString(t);
      } else if (std::string_view("{}(),=").find(c) != std::string_view::npos) {
        t.kind = TokKind::kPunct;
        t.text.push_back(Advance());
      } else {
        std::string bad(1, c);
        throw ParseError(line_, column_,
                         {"'('", "'{'", "<identifier>", "<number>", "<string>"},
                         "character " + QuoteString(bad));
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char Advance() {
    const char c = src_[at_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
    return c;
  }

  void LexDigits(std::string& out) {
    while (at_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[at_]))) {
      out.push_back(Advance());
    }
  }

  void SkipSpaceAndComments() {
    while (at_ < src_.size()) {
      const char c = src_[at_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (c == '/' && at_ + 1 < src_.size() && src_[at_ + 1] == '/') {
        while (at_ < src_.size() && src_[at_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  void LexString(Token& t) {
    Advance();  // opening quote
    while (true) {
      if (at_ >= src_.size() || src_[at_] == '\n') {
        throw ParseError(line_, column_, {"'\"'"}, "unterminated string");
      }
      const char c = Advance();
      if (c == '"') return;
      if (c != '\\') {
        t.text.push_back(c);
        continue;
      }
      if (at_ >= src_.size()) {
        throw ParseError(line_, column_, {"'\"'"}, "unterminated string");
      }
      const int line = line_, column = column_;
      const char e = Advance();
      switch (e) {
        case '"': t.text.push_back('"'); break;
        case '\\': t.text.push_back('\\'); break;
        case 'n': t.text.push_back('\n'); break;
        case 't': t.text.push_back('\t'); break;
        case 'r': t.text.push_back('\r'); break;
        default:
          throw ParseError(line, column,
                           {"'\"'", "'\\'", "'n'", "'r'", "'t'"},
                           "escape \\" + std::string(1, e));
      }
    }
  }

  std::string_view src_;
  std::size_t at_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  PropertyAST ParseFile() {
    PropertyAST ast;
    ast.pos = Peek().pos;
    ExpectWord("property");
    ast.name = ExpectName();
    ExpectPunct("{");

    ExpectSection("pre");
    ExpectPunct("{");
    ast.precondition = ParseExpr();
    ExpectPunct("}");

    ExpectSection("run");
    ExpectPunct("{");
    ast.interaction = ParseBlockBody();
    ExpectPunct("}");

    ExpectSection("post");
    ExpectPunct("{");
    while (IsWord(Peek(), "assert")) {
      Next();
      ast.postcondition.push_back(ParseExpr());
    }
    if (!IsPunct(Peek(), "}")) Fail({Quoted("assert"), Quoted("}")});
    Next();

    ExpectPunct("}");
    if (Peek().kind != TokKind::kEnd) Fail({"<end of input>"});
    return ast;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return toks_[std::min(at_ + ahead, toks_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = toks_[at_];
    if (at_ + 1 < toks_.size()) ++at_;
    return t;
  }

  static bool IsWord(const Token& t, std::string_view w) {
    return t.kind == TokKind::kIdent && t.text == w;
  }
  static bool IsPunct(const Token& t, std::string_view p) {
    return t.kind == TokKind::kPunct && t.text == p;
  }

  [[noreturn]] void Fail(std::vector<std::string> expected,
                         const std::string& note = "") const {
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()),
                   expected.end());
    const Token& t = Peek();
    std::string found = Describe(t);
    if (!note.empty()) found += " (" + note + ")";
    throw ParseError(t.pos.line, t.pos.column, std::move(expected), found);
  }

  void ExpectPunct(std::string_view p) {
    if (!IsPunct(Peek(), p)) Fail({Quoted(p)});
    Next();
  }
  void ExpectWord(std::string_view w) {
    if (!IsWord(Peek(), w)) Fail({Quoted(w)});
    Next();
  }
  void ExpectSection(std::string_view w) {
    if (!IsWord(Peek(), w)) {
      Fail({Quoted(w)}, "missing " + std::string(w) + " section");
    }
    Next();
  }
  std::string ExpectName() {
    const Token& t = Peek();
    if (t.kind != TokKind::kIdent || IsReservedWord(t.text)) {
      Fail({"<identifier>"});
    }
    return Next().text;
  }
  std::string ExpectString() {
    if (Peek().kind != TokKind::kString) Fail({"<string>"});
    return Next().text;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) p.Fail({}, "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  // --- statements -------------------------------------------------------

  std::vector<Stmt> ParseBlockBody() {
    std::vector<Stmt> body;
    while (!IsPunct(Peek(), "}")) body.push_back(ParseStmt());
    return body;
  }

  Stmt ParseStmt() {
    DepthGuard guard(*this);
    const Token& t = Peek();
    if (IsWord(t, "let")) return ParseLet();
    if (IsWord(t, "if")) return ParseIf();
    if (t.kind == TokKind::kIdent && !IsReservedWord(t.text) &&
        IsPunct(Peek(1), "(")) {
      return Stmt{Do{ParseAction()}};
    }
    Fail({Quoted("let"), Quoted("if"), "<action>", Quoted("}")});
  }

  Stmt ParseLet() {
    const SourcePos pos = Next().pos;
    std::string var = ExpectName();
    ExpectPunct("=");
    if (IsWord(Peek(), "all")) {
      Next();
      return Stmt{LetAll{std::move(var), ParseSelector(), pos}};
    }
    if (IsWord(Peek(), "pick")) {
      Next();
      LetPick pick;
      pick.var = std::move(var);
      pick.pos = pos;
      pick.element = ExpectName();
      ExpectWord("in");
      pick.source = ExpectName();
      ExpectWord("where");
      pick.predicate = ParseExpr();
      return Stmt{std::move(pick)};
    }
    Fail({Quoted("all"), Quoted("pick")});
  }

  Stmt ParseIf() {
    If branch;
    branch.pos = Next().pos;
    branch.condition = ParseExpr();
    ExpectPunct("{");
    branch.then_body = ParseBlockBody();
    ExpectPunct("}");
    if (IsWord(Peek(), "else")) {
      Next();
      ExpectPunct("{");
      branch.else_body = ParseBlockBody();
      ExpectPunct("}");
    }
    return Stmt{std::move(branch)};
  }

  long ParseDuration() {
    const Token& t = Peek();
    long value = 0;
    if (t.kind == TokKind::kNumber) {
      const char* first = t.text.data();
      const char* last = first + t.text.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec == std::errc() && ptr == last) {
        Next();
        return value;
      }
    }
    Fail({"<integer>"});
  }

  Action ParseAction() {
    Action a;
    a.pos = Peek().pos;
    a.name = Next().text;
    a.kind = ActionFromName(a.name);
    ExpectPunct("(");
    switch (a.kind) {
      case ActionKind::kClick:
      case ActionKind::kLongClick:
        a.target = ParseTarget();
        break;
      case ActionKind::kSetText:
        a.target = ParseTarget();
        ExpectPunct(",");
        a.text = ExpectString();
        break;
      case ActionKind::kPressBack:
        break;
      case ActionKind::kWait:
        a.duration_ms = ParseDuration();
        break;
      case ActionKind::kUnknown:
        ParseLooseArgs(a);
        break;
    }
    ExpectPunct(")");
    return a;
  }

  // Unknown actions keep whatever target, string and integer they were given
  // (at most one of each) so the validator can report them by name.
  void ParseLooseArgs(Action& a) {
    if (IsPunct(Peek(), ")")) return;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokKind::kString && !a.text) {
        a.text = Next().text;
      } else if (t.kind == TokKind::kNumber && !a.duration_ms) {
        a.duration_ms = ParseDuration();
      } else if ((IsWord(t, "widget") ||
                  (t.kind == TokKind::kIdent && !IsReservedWord(t.text))) &&
                 !a.target) {
        a.target = ParseTarget();
      } else {
        Fail({"<argument>"});
      }
      if (!IsPunct(Peek(), ",")) return;
      Next();
    }
  }

  // --- selectors and targets -------------------------------------------

  Selector ParseSelector() {
    Selector s;
    s.pos = Peek().pos;
    ExpectWord("widget");
    ExpectPunct("(");
    bool mode_seen = false;
    while (true) {
      const Token& t = Peek();
      if (IsWord(t, "mode") && !mode_seen) {
        Next();
        ExpectPunct("=");
        if (IsWord(Peek(), "exact")) {
          s.mode = MatchMode::kExact;
        } else if (IsWord(Peek(), "contains")) {
          s.mode = MatchMode::kContains;
        } else {
          Fail({Quoted("contains"), Quoted("exact")});
        }
        Next();
        mode_seen = true;
      } else if (t.kind == TokKind::kIdent && FieldFromName(t.text)) {
        const Field f = *FieldFromName(Next().text);
        ExpectPunct("=");
        if (Peek().kind == TokKind::kString && Peek().text.empty()) {
          Fail({"<non-empty string>"}, "selector values cannot be empty");
        }
        s.clauses.push_back({f, ExpectString()});
      } else {
        std::vector<std::string> want = {Quoted("class"), Quoted("desc"),
                                         Quoted("id"), Quoted("text")};
        if (!mode_seen) want.push_back(Quoted("mode"));
        Fail(std::move(want));
      }
      if (IsPunct(Peek(), ")")) break;
      ExpectPunct(",");
    }
    Next();
    if (s.clauses.empty()) {
      Fail({Quoted("class"), Quoted("desc"), Quoted("id"), Quoted("text")},
           "selector has no attribute clause");
    }
    return s;
  }

  Target ParseTarget() {
    const Token& t = Peek();
    if (IsWord(t, "widget")) return ParseSelector();
    if (t.kind == TokKind::kIdent && !IsReservedWord(t.text)) {
      const SourcePos pos = t.pos;
      return VarRef{Next().text, pos};
    }
    Fail({Quoted("widget"), "<identifier>"});
  }

  // --- expressions -------------------------------------------------------

  Expr ParseExpr() {
    DepthGuard guard(*this);
    const SourcePos pos = Peek().pos;
    std::vector<Expr> operands;
    operands.push_back(ParseAnd());
    while (IsWord(Peek(), "or")) {
      Next();
      operands.push_back(ParseAnd());
    }
    if (operands.size() == 1) return std::move(operands[0]);
    Expr e = Expr::Logical(ExprKind::kOr, std::move(operands));
    e.pos = pos;
    return e;
  }

  Expr ParseAnd() {
    const SourcePos pos = Peek().pos;
    std::vector<Expr> operands;
    operands.push_back(ParseUnary());
    while (IsWord(Peek(), "and")) {
      Next();
      operands.push_back(ParseUnary());
    }
    if (operands.size() == 1) return std::move(operands[0]);
    Expr e = Expr::Logical(ExprKind::kAnd, std::move(operands));
    e.pos = pos;
    return e;
  }

  Expr ParseUnary() {
    DepthGuard guard(*this);
    if (IsWord(Peek(), "not")) {
      const SourcePos pos = Next().pos;
      Expr e = Expr::Not(ParseUnary());
      e.pos = pos;
      return e;
    }
    return ParsePrimary();
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    const SourcePos pos = t.pos;
    Expr e;
    if (IsPunct(t, "(")) {
      Next();
      e = ParseExpr();
      ExpectPunct(")");
      return e;
    }
    if (t.kind == TokKind::kString) {
      e = Expr::String(Next().text);
    } else if (t.kind == TokKind::kNumber) {
      e = Expr::Number(Next().text);
    } else if (IsWord(t, "true") || IsWord(t, "false")) {
      e = Expr::Bool(Next().text == "true");
    } else if (IsWord(t, "exists")) {
      Next();
      ExpectPunct("(");
      e = Expr::Exists(ParseTarget());
      ExpectPunct(")");
    } else if (IsWord(t, "attr")) {
      Next();
      ExpectPunct("(");
      Target target = ParseTarget();
      ExpectPunct(",");
      const Token& f = Peek();
      const auto field =
          f.kind == TokKind::kIdent ? FieldFromName(f.text) : std::nullopt;
      if (!field) {
        Fail({Quoted("class"), Quoted("desc"), Quoted("id"), Quoted("text")});
      }
      Next();
      ExpectPunct(")");
      e = Expr::Attr(std::move(target), *field);
    } else if (IsWord(t, "contains") || IsWord(t, "startswith") ||
               IsWord(t, "equals")) {
      const ExprKind kind = t.text == "contains"     ? ExprKind::kContains
                            : t.text == "startswith" ? ExprKind::kStartsWith
                                                     : ExprKind::kEquals;
      Next();
      ExpectPunct("(");
      Expr lhs = ParseExpr();
      ExpectPunct(",");
      Expr rhs = ParseExpr();
      ExpectPunct(")");
      e = Expr::Call(kind, std::move(lhs), std::move(rhs));
    } else if (t.kind == TokKind::kIdent && !IsReservedWord(t.text)) {
      e = Expr::Var(Next().text);
    } else {
      Fail({Quoted("("), Quoted("attr"), Quoted("contains"), Quoted("equals"),
            Quoted("exists"), Quoted("false"), Quoted("not"),
            Quoted("startswith"), Quoted("true"), "<identifier>", "<number>",
            "<string>"});
    }
    e.pos = pos;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int depth_ = 0;
};

std::string FormatParseMessage(int line, int column,
                               const std::vector<std::string>& expected,
                               const std::string& found) {
  std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": ";
  if (expected.empty()) {
    msg += "unexpected " + found;
  } else {
    msg += "expected " + Join(expected, ", ") + " but found " + found;
  }
  return msg;
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       std::string found)
    : Error(ErrorCode::kParseError,
            FormatParseMessage(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

bool IsReservedWord(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

PropertyAST ParseProperty(std::string_view source) {
  Parser parser(Lexer(source).Run());
  return parser.ParseFile();
}

}  // namespace propforge::propdsl
