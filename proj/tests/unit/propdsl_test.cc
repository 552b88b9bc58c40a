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

#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"
#include "propforge/grounding/context_store.h"
#include "propforge/propdsl/complexity.h"
#include "propforge/propdsl/emitter.h"
#include "propforge/propdsl/parser.h"
#include "propforge/propdsl/printer.h"
#include "propforge/propdsl/validator.h"

namespace propforge::propdsl {
namespace {

using ::testing::Contains;
using ::testing::HasSubstr;

constexpr char kOpenDirectory[] = R"(// Clicking a directory opens it.
property open_directory {
  pre {
    exists(widget(id="firstline")) and exists(widget(id="search"))
  }
  run {
    let names = all widget(id="firstline")
    let picked = pick item in names where not contains(attr(item, text), ".")
    click(picked)
  }
  post {
    assert contains(attr(widget(id="fullpath"), text), attr(picked, text))
  }
}
)";

constexpr char kMinimal[] =
    "property p { pre { true } run { press_back() } post { assert true } }";

EmissionTemplate Template(const std::string& name) {
  return LoadTemplate(std::string(PROPFORGE_DATA_DIR) + "/templates/" + name +
                      ".json");
}

ParseError ParseFailure(std::string_view src) {
  try {
    ParseProperty(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << src;
  return ParseError(0, 0, {}, "");
}

// ------------------------------------------------------------------ parser

TEST(ParserTest, OpenDirectoryShape) {
  const PropertyAST ast = ParseProperty(kOpenDirectory);
  EXPECT_EQ(ast.name, "open_directory");
  ASSERT_EQ(ast.precondition.kind, ExprKind::kAnd);
  ASSERT_EQ(ast.precondition.args.size(), 2u);
  EXPECT_EQ(ast.precondition.args[0].kind, ExprKind::kExists);
  EXPECT_EQ(ast.precondition.args[1].kind, ExprKind::kExists);
  ASSERT_EQ(ast.interaction.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<LetAll>(ast.interaction[0].node));
  const auto& pick = std::get<LetPick>(ast.interaction[1].node);
  EXPECT_EQ(pick.var, "picked");
  EXPECT_EQ(pick.element, "item");
  EXPECT_EQ(pick.source, "names");
  EXPECT_EQ(pick.predicate.kind, ExprKind::kNot);
  const auto& click = std::get<Do>(ast.interaction[2].node).action;
  EXPECT_EQ(click.kind, ActionKind::kClick);
  ASSERT_EQ(ast.postcondition.size(), 1u);
  EXPECT_EQ(ast.postcondition[0].kind, ExprKind::kContains);
}

TEST(ParserTest, MinimalProperty) {
  const PropertyAST ast = ParseProperty(kMinimal);
  PropertyAST expected;
  expected.name = "p";
  expected.precondition = Expr::Bool(true);
  expected.interaction.push_back(Stmt{Do{Action{ActionKind::kPressBack,
                                                "press_back", std::nullopt,
                                                std::nullopt, std::nullopt,
                                                {}}}});
  expected.postcondition.push_back(Expr::Bool(true));
  EXPECT_EQ(ast, expected);
}

TEST(ParserTest, RetainsSourcePositions) {
  const PropertyAST ast = ParseProperty(kOpenDirectory);
  EXPECT_EQ(ast.pos.line, 2);
  EXPECT_EQ(ast.precondition.args[1].pos.line, 4);
  EXPECT_EQ(ast.precondition.args[1].pos.column, 40);
  const auto& click = std::get<Do>(ast.interaction[2].node).action;
  EXPECT_EQ(click.pos.line, 9);
  EXPECT_EQ(click.pos.column, 5);
}

TEST(ParserTest, MissingPostNamesTheSection) {
  const ParseError e = ParseFailure(
      "property p {\n  pre { true }\n  run { press_back() }\n}\n");
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_THAT(e.expected(), Contains("'post'"));
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 1);
  EXPECT_THAT(std::string(e.what()), HasSubstr("post"));
}

TEST(ParserTest, ReportsExpectedTokenSets) {
  ParseError e = ParseFailure("property p { pre { } run { } post { } }");
  EXPECT_THAT(e.expected(), Contains("'exists'"));
  EXPECT_THAT(e.expected(), Contains("<string>"));

  e = ParseFailure("property p { pre { true } run { let x = some } post { } }");
  EXPECT_EQ(e.expected(), (std::vector<std::string>{"'all'", "'pick'"}));

  e = ParseFailure("property p { pre { attr(widget(text=\"a\"), color) } "
                   "run { } post { } }");
  EXPECT_EQ(e.expected(), (std::vector<std::string>{"'class'", "'desc'", "'id'",
                                                    "'text'"}));
}

TEST(ParserTest, RejectsLexicalErrors) {
  EXPECT_EQ(ParseFailure("property p { pre { \"open } }").expected(),
            (std::vector<std::string>{"'\"'"}));
  const ParseError e = ParseFailure("property p {\n pre { true # }");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 13);
}

TEST(ParserTest, RejectsEmptySelectorsAndValues) {
  ParseFailure("property p { pre { exists(widget()) } run { } post { } }");
  ParseFailure("property p { pre { exists(widget(text=\"\")) } run { } post { } }");
}

TEST(ParserTest, ReservedWordsCannotBeNames) {
  ParseFailure("property if { pre { true } run { } post { } }");
  ParseFailure("property p { pre { true } run { let all = all widget(text=\"a\") } "
               "post { } }");
}

TEST(ParserTest, PrecedenceNotAndOr) {
  const auto ast = ParseProperty(
      "property p { pre { not true and false or true } run { press_back() } "
      "post { } }");
  const Expr& e = ast.precondition;
  ASSERT_EQ(e.kind, ExprKind::kOr);
  ASSERT_EQ(e.args[0].kind, ExprKind::kAnd);
  EXPECT_EQ(e.args[0].args[0].kind, ExprKind::kNot);
}

TEST(ParserTest, FlattensChainsButKeepsGroups) {
  const auto flat = ParseProperty(
      "property p { pre { true and false and true } run { press_back() } post { } }");
  EXPECT_EQ(flat.precondition.args.size(), 3u);
  const auto grouped = ParseProperty(
      "property p { pre { (true and false) and true } run { press_back() } "
      "post { } }");
  ASSERT_EQ(grouped.precondition.args.size(), 2u);
  EXPECT_EQ(grouped.precondition.args[0].kind, ExprKind::kAnd);
  EXPECT_NE(flat, grouped);
}

TEST(ParserTest, ActionsAndSelectors) {
  const auto ast = ParseProperty(R"(property p {
    pre { exists(widget(text="Note", mode=contains)) }
    run {
      set_text(widget(id="title", class="EditText"), "a \"b\"\n")
      long_click(widget(desc="More"))
      wait(500)
      if exists(widget(text="OK")) { click(widget(text="OK")) } else { press_back() }
      swipe(widget(id="list"), "up")
    }
    post { }
  })");
  ASSERT_EQ(ast.interaction.size(), 5u);
  const auto& set = std::get<Do>(ast.interaction[0].node).action;
  EXPECT_EQ(set.kind, ActionKind::kSetText);
  EXPECT_EQ(set.text, "a \"b\"\n");
  const auto& sel = std::get<Selector>(*set.target);
  ASSERT_EQ(sel.clauses.size(), 2u);
  EXPECT_EQ(sel.clauses[1].field, Field::kClass);
  EXPECT_EQ(std::get<Do>(ast.interaction[2].node).action.duration_ms, 500);
  const auto& branch = std::get<If>(ast.interaction[3].node);
  EXPECT_TRUE(branch.else_body.has_value());
  const auto& swipe = std::get<Do>(ast.interaction[4].node).action;
  EXPECT_EQ(swipe.kind, ActionKind::kUnknown);
  EXPECT_EQ(swipe.name, "swipe");
  EXPECT_EQ(std::get<Selector>(ast.precondition.target).mode,
            MatchMode::kContains);
}

TEST(ParserTest, DeepNestingFailsCleanly) {
  std::string src = "property p { pre { ";
  for (int i = 0; i < 5000; ++i) src += "(";
  src += "true";
  for (int i = 0; i < 5000; ++i) src += ")";
  src += " } run { press_back() } post { } }";
  EXPECT_THROW(ParseProperty(src), ParseError);
}

// ----------------------------------------------------------------- printer

TEST(PrinterTest, CanonicalMinimal) {
  EXPECT_EQ(PrintProperty(ParseProperty(kMinimal)),
            "property p {\n"
            "  pre {\n"
            "    true\n"
            "  }\n"
            "  run {\n"
            "    press_back()\n"
            "  }\n"
            "  post {\n"
            "    assert true\n"
            "  }\n"
            "}\n");
}

TEST(PrinterTest, RoundTripsFixedSources) {
  for (const char* src : {kMinimal, kOpenDirectory}) {
    const auto ast = ParseProperty(src);
    const std::string text = PrintProperty(ast);
    EXPECT_EQ(ParseProperty(text), ast);
    EXPECT_EQ(PrintProperty(ParseProperty(text)), text);
  }
}

TEST(PrinterTest, RoundTripsNestedIf) {
  const auto ast = ParseProperty(R"(property nested {
    pre { true }
    run {
      if exists(widget(text="A")) {
        if not exists(widget(text="B")) or exists(widget(text="C")) {
          click(widget(text="A"))
        } else {
          let xs = all widget(class="TextView")
          if equals(attr(widget(text="A"), desc), "x") { press_back() }
        }
      }
    }
    post { assert (true or false) and not (false and true) }
  })");
  EXPECT_EQ(ParseProperty(PrintProperty(ast)), ast);
}

// Builds random well-formed properties. Variables are only referenced after
// they are bound in an enclosing or earlier scope.
class AstGen {
 public:
  explicit AstGen(unsigned seed) : rng_(seed) {}

  PropertyAST Property() {
    PropertyAST ast;
    ast.name = "prop_" + std::to_string(Int(0, 999));
    ast.precondition = Bool({}, 3);
    std::vector<std::string> lists, widgets;
    ast.interaction = Body(lists, widgets, 2);
    ast.interaction.push_back(Stmt{Do{Click(widgets)}});
    const int n = Int(0, 3);
    for (int i = 0; i < n; ++i) ast.postcondition.push_back(Bool(widgets, 3));
    return ast;
  }

 private:
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Coin() { return Int(0, 1) == 1; }

  std::string Str() {
    static const std::vector<std::string> kPool = {
        "Settings", "a \"quoted\" word", "back\\slash", "line\nbreak", "\t",
        "caf\xC3\xA9", ".", "x"};
    return kPool[Int(0, static_cast<int>(kPool.size()) - 1)];
  }

  Selector Sel() {
    Selector s;
    const int n = Int(1, 3);
    for (int i = 0; i < n; ++i) {
      s.clauses.push_back({static_cast<Field>(Int(0, 3)), Str()});
    }
    s.mode = Coin() ? MatchMode::kContains : MatchMode::kExact;
    return s;
  }

  Target WidgetTarget(const std::vector<std::string>& widgets) {
    if (!widgets.empty() && Coin()) {
      return VarRef{widgets[Int(0, static_cast<int>(widgets.size()) - 1)], {}};
    }
    return Sel();
  }

  Expr StringExpr(const std::vector<std::string>& widgets) {
    switch (Int(0, 2)) {
      case 0: return Expr::String(Str());
      case 1: return Expr::Number(std::to_string(Int(-5, 500)));
      default: return Expr::Attr(WidgetTarget(widgets), static_cast<Field>(Int(0, 3)));
    }
  }

  Expr Bool(const std::vector<std::string>& widgets, int depth) {
    const int pick = depth <= 0 ? Int(0, 2) : Int(0, 5);
    switch (pick) {
      case 0: return Expr::Bool(Coin());
      case 1: return Expr::Exists(WidgetTarget(widgets));
      case 2: {
        const ExprKind k = static_cast<ExprKind>(
            static_cast<int>(ExprKind::kContains) + Int(0, 2));
        return Expr::Call(k, StringExpr(widgets), StringExpr(widgets));
      }
      case 3: return Expr::Not(Bool(widgets, depth - 1));
      default: {
        std::vector<Expr> ops;
        const int n = Int(2, 3);
        for (int i = 0; i < n; ++i) ops.push_back(Bool(widgets, depth - 1));
        return Expr::Logical(pick == 4 ? ExprKind::kAnd : ExprKind::kOr,
                             std::move(ops));
      }
    }
  }

  Action Click(const std::vector<std::string>& widgets) {
    Action a;
    a.kind = ActionKind::kClick;
    a.name = "click";
    a.target = WidgetTarget(widgets);
    return a;
  }

  std::string Fresh() { return "v" + std::to_string(next_var_++); }

  std::vector<Stmt> Body(std::vector<std::string>& lists,
                         std::vector<std::string>& widgets, int depth) {
    std::vector<Stmt> body;
    const int n = Int(0, 4);
    for (int i = 0; i < n; ++i) {
      switch (Int(0, depth > 0 ? 4 : 3)) {
        case 0: {
          const std::string v = Fresh();
          body.push_back(Stmt{LetAll{v, Sel(), {}}});
          lists.push_back(v);
          break;
        }
        case 1: {
          if (lists.empty()) break;
          LetPick p;
          p.var = Fresh();
          p.element = Fresh();
          p.source = lists[Int(0, static_cast<int>(lists.size()) - 1)];
          auto inner = widgets;
          inner.push_back(p.element);
          p.predicate = Bool(inner, 2);
          widgets.push_back(p.var);
          body.push_back(Stmt{std::move(p)});
          break;
        }
        case 2: {
          Action a;
          switch (Int(0, 3)) {
            case 0: a = Click(widgets); break;
            case 1:
              a = Click(widgets);
              a.kind = ActionKind::kSetText;
              a.name = "set_text";
              a.text = Str();
              break;
            case 2:
              a.kind = ActionKind::kPressBack;
              a.name = "press_back";
              break;
            default:
              a.kind = ActionKind::kWait;
              a.name = "wait";
              a.duration_ms = Int(1, 10000);
          }
          body.push_back(Stmt{Do{std::move(a)}});
          break;
        }
        case 3:
          body.push_back(Stmt{Do{Click(widgets)}});
          break;
        default: {
          If branch;
          branch.condition = Bool(widgets, 2);
          auto tl = lists, tw = widgets;
          branch.then_body = Body(tl, tw, depth - 1);
          if (Coin()) {
            auto el = lists, ew = widgets;
            branch.else_body = Body(el, ew, depth - 1);
          }
          body.push_back(Stmt{std::move(branch)});
        }
      }
    }
    return body;
  }

  std::mt19937 rng_;
  int next_var_ = 0;
};

TEST(PrinterTest, RandomAstsRoundTripAndStayValid) {
  const auto identity = Template("identity");
  for (unsigned seed = 0; seed < 400; ++seed) {
    SCOPED_TRACE(seed);
    const PropertyAST ast = AstGen(seed).Property();
    const std::string text = PrintProperty(ast);
    PropertyAST back;
    ASSERT_NO_THROW(back = ParseProperty(text)) << text;
    ASSERT_EQ(back, ast) << text;
    EXPECT_EQ(Complexity(back), Complexity(ast));
    const auto diags = Validate(back);
    EXPECT_FALSE(HasErrors(diags))
        << text << (diags.empty() ? "" : FormatDiagnostic(diags[0]));
    EXPECT_EQ(EmitFrameworkScript(ast, identity), text);
  }
}

// --------------------------------------------------------------- validator

grounding::WidgetContextStore SettingsStore() {
  grounding::WidgetContextStore store;
  store.app_name = "Podcasts";
  grounding::EnrichedWidget w;
  w.uid = "u1";
  w.source_capture = "c";
  w.attributes.text = "Settings";
  w.attributes.resource_id = "app.settings";
  w.attributes.class_name = "android.widget.TextView";
  w.annotation = grounding::WidgetAnnotation{"Settings menu item",
                                             "Opens the settings screen"};
  store.widgets.push_back(w);
  return store;
}

std::vector<Diagnostic> ValidateSource(std::string_view src,
                                       const grounding::WidgetContextStore* store =
                                           nullptr) {
  return Validate(ParseProperty(src), store);
}

int Count(const std::vector<Diagnostic>& ds, Severity s) {
  int n = 0;
  for (const auto& d : ds) n += d.severity == s;
  return n;
}

TEST(ValidatorTest, UndefinedVariableIsOneError) {
  const auto ds = ValidateSource(
      "property p { pre { true } run { click(ghost) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].severity, Severity::kError);
  EXPECT_EQ(ds[0].code, kUnboundVar);
  EXPECT_EQ(ds[0].pos.line, 1);
}

TEST(ValidatorTest, GroundedSelectorHasNoWarnings) {
  const auto store = SettingsStore();
  const auto ds = ValidateSource(
      "property p { pre { exists(widget(text=\"Settings\")) } "
      "run { click(widget(text=\"Settings\")) } post { } }",
      &store);
  EXPECT_EQ(Count(ds, Severity::kWarning), 0);
  EXPECT_EQ(Count(ds, Severity::kError), 0);
}

TEST(ValidatorTest, UngroundedSelectorWarnsOnce) {
  const auto store = SettingsStore();
  const auto ds = ValidateSource(
      "property p { pre { true } run { click(widget(id=\"nonexistent\")) } "
      "post { } }",
      &store);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].severity, Severity::kWarning);
  EXPECT_EQ(ds[0].code, kUngrounded);
}

TEST(ValidatorTest, UngroundedSelectorSuggestsClosestWidget) {
  const auto store = SettingsStore();
  const auto ds = ValidateSource(
      "property p { pre { true } run { click(widget(text=\"Open settings\")) } "
      "post { } }",
      &store);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].suggestion, "widget(id=\"app.settings\")");
}

TEST(ValidatorTest, OpenDirectoryIsClean) {
  EXPECT_TRUE(ValidateSource(kOpenDirectory).empty());
}

TEST(ValidatorTest, TypeErrors) {
  auto ds = ValidateSource(
      "property p { pre { attr(widget(text=\"a\"), text) } run { press_back() } "
      "post { assert contains(true, \"x\") } }");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].code, kTypeMismatch);
  EXPECT_EQ(ds[1].code, kTypeMismatch);

  ds = ValidateSource(
      "property p { pre { true } run { let xs = all widget(text=\"a\") "
      "click(xs) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kTypeMismatch);

  ds = ValidateSource(
      "property p { pre { true } run { let xs = all widget(text=\"a\") "
      "let y = pick e in xs where true let z = pick f in y where true "
      "click(z) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kTypeMismatch);
}

TEST(ValidatorTest, UnknownActionsAndArguments) {
  auto ds = ValidateSource(
      "property p { pre { true } run { swipe(widget(id=\"l\"), \"up\") } "
      "post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kUnknownAction);
  EXPECT_THAT(ds[0].message, HasSubstr("swipe"));

  ds = ValidateSource(
      "property p { pre { true } run { wait(0) wait(10001) wait(10000) } "
      "post { } }");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].code, kBadArgument);
}

TEST(ValidatorTest, BranchBindingsDoNotEscape) {
  const auto ds = ValidateSource(
      "property p { pre { true } run { if true { let xs = all widget(text=\"a\") } "
      "let y = pick e in xs where true click(y) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kUnboundVar);
}

TEST(ValidatorTest, PickPredicateSeesOnlyItsElementAndPriorVars) {
  auto ds = ValidateSource(
      "property p { pre { true } run { let xs = all widget(text=\"a\") "
      "let y = pick e in xs where exists(later) let later = all widget(text=\"b\") "
      "click(y) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kUnboundVar);
  ds = ValidateSource(
      "property p { pre { true } run { let xs = all widget(text=\"a\") "
      "let y = pick e in xs where true click(e) } post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kUnboundVar);
}

TEST(ValidatorTest, RequiresAnEvent) {
  const auto ds = ValidateSource(
      "property p { pre { true } run { let xs = all widget(text=\"a\") } "
      "post { } }");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kNoEvents);
}

TEST(ValidatorTest, MalformedHandBuiltAst) {
  PropertyAST ast = ParseProperty(kMinimal);
  ast.precondition = Expr::Logical(ExprKind::kAnd, {Expr::Bool(true)});
  const auto ds = Validate(ast);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, kMalformedNode);
}

// -------------------------------------------------------------- complexity

TEST(ComplexityTest, MinimalProperty) {
  const auto m = Complexity(ParseProperty(kMinimal));
  EXPECT_EQ(m.clause_count, 2);
  EXPECT_EQ(m.operator_count, 0);
  EXPECT_EQ(m.event_count, 1);
  EXPECT_EQ(m.char_count,
            static_cast<int>(PrintProperty(ParseProperty(kMinimal)).size()));
}

TEST(ComplexityTest, ConjunctionOfTwoExists) {
  const auto m = Complexity(ParseProperty(
      "property p { pre { exists(widget(text=\"A\")) and exists(widget(text=\"B\")) } "
      "run { press_back() } post { } }"));
  EXPECT_EQ(m.clause_count, 2);
  EXPECT_EQ(m.operator_count, 1);
}

TEST(ComplexityTest, OpenDirectory) {
  const auto m = Complexity(ParseProperty(kOpenDirectory));
  EXPECT_EQ(m.event_count, 1);
  EXPECT_EQ(m.clause_count, 3);
  EXPECT_EQ(m.operator_count, 1);
}

TEST(ComplexityTest, BranchesCountedOnceEach) {
  const auto m = Complexity(ParseProperty(
      "property p { pre { not (true or false or true) } run { "
      "if true { click(widget(text=\"a\")) wait(5) } else { press_back() } "
      "press_back() } post { assert true assert false } }"));
  EXPECT_EQ(m.event_count, 4);
  EXPECT_EQ(m.operator_count, 3);  // not + two 'or'
  EXPECT_EQ(m.clause_count, 5);
}

std::string EncodeUtf8(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t c : cps) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

TEST(CharComplexityTest, KnownValues) {
  EXPECT_EQ(CharComplexity("click the undo button"), 21);
  EXPECT_EQ(CharComplexity(""), 0);
}

TEST(CharComplexityTest, CountsScalarsAcrossLinesAgainstEncoder) {
  std::mt19937 rng(7);
  const std::vector<char32_t> alphabet = {U'a', U'\n', U' ', U'é', U'中',
                                          U'\U0001F600', U'"', U'Ж'};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<char32_t> a, b;
    const int na = std::uniform_int_distribution<int>(0, 40)(rng);
    const int nb = std::uniform_int_distribution<int>(0, 40)(rng);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < na; ++i) a.push_back(alphabet[pick(rng)]);
    for (int i = 0; i < nb; ++i) b.push_back(alphabet[pick(rng)]);
    const std::string sa = EncodeUtf8(a), sb = EncodeUtf8(b);
    EXPECT_EQ(CharComplexity(sa), na);
    EXPECT_EQ(CharComplexity(sa + sb), CharComplexity(sa) + CharComplexity(sb));
  }
}

// ----------------------------------------------------------------- emitter

TEST(EmitterTest, IdentityTemplateReproducesCanonicalText) {
  const auto identity = Template("identity");
  for (const char* src : {kMinimal, kOpenDirectory}) {
    const auto ast = ParseProperty(src);
    EXPECT_EQ(EmitFrameworkScript(ast, identity), PrintProperty(ast));
  }
}

TEST(EmitterTest, KeaTemplateMatchesGolden) {
  const std::string script =
      EmitFrameworkScript(ParseProperty(kOpenDirectory), Template("kea"));
  EXPECT_EQ(script,
            ReadFile(std::string(PROPFORGE_GOLDEN_DIR) + "/open_directory_kea.py"));
  EXPECT_THAT(script, HasSubstr("assert picked.get_text() in "
                                "d(resourceId=\"fullpath\").get_text()"));
}

TEST(EmitterTest, MissingIfRenderingIsUnsupported) {
  auto tmpl = Template("identity");
  tmpl.nodes.erase("if");
  const auto ast = ParseProperty(
      "property p { pre { true } run { if true { press_back() } } post { } }");
  try {
    EmitFrameworkScript(ast, tmpl);
    FAIL() << "expected UnsupportedNode";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedNode);
    EXPECT_THAT(std::string(e.what()), HasSubstr("'if'"));
  }
  EXPECT_NO_THROW(EmitFrameworkScript(ParseProperty(kMinimal), tmpl));
}

TEST(EmitterTest, RejectsMalformedTemplateJson) {
  EXPECT_THROW(TemplateFromJson(nlohmann::json::array()), Error);
  EXPECT_THROW(TemplateFromJson({{"nodes", {{"if", 3}}}}), Error);
}

}  // namespace
}  // namespace propforge::propdsl
