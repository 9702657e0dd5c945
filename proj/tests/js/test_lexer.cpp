#include "muzeel/js/lexer.hpp"

#include <gtest/gtest.h>

using muzeel::js::lex;
using muzeel::js::ParseError;
using muzeel::js::Token;
using muzeel::js::TokenType;

namespace {

std::vector<std::string> texts(const std::string& src) {
  auto result = lex(src);
  std::vector<std::string> out;
  for (const auto& t : result.tokens) {
    out.push_back(std::string(muzeel::js::token_text(t, src)));
  }
  return out;
}

TokenType type_of_last(const std::string& src) {
  auto result = lex(src);
  return result.tokens.back().type;
}

}  // namespace

TEST(Lexer, BasicTokens) {
  auto t = texts("var x = 1 + 2;");
  ASSERT_EQ(t.size(), 7u);
  EXPECT_EQ(t[0], "var");
  EXPECT_EQ(t[3], "1");
  EXPECT_EQ(t[6], ";");
}

TEST(Lexer, LineTracking) {
  auto result = lex("a\nb\r\nc\rd");
  ASSERT_EQ(result.tokens.size(), 4u);
  EXPECT_EQ(result.tokens[0].line, 1);
  EXPECT_EQ(result.tokens[1].line, 2);
  EXPECT_EQ(result.tokens[2].line, 3);
  EXPECT_EQ(result.tokens[3].line, 4);
  EXPECT_EQ(result.line_count, 4);
}

TEST(Lexer, StringsSwallowBracesAndSlashes) {
  auto t = texts("var s = \"a{b}c//d\" + 'e/*f*/' ;");
  EXPECT_EQ(t[3], "\"a{b}c//d\"");
  EXPECT_EQ(t[5], "'e/*f*/'");
}

TEST(Lexer, RegexVsDivision) {
  EXPECT_EQ(type_of_last("var r = /ab+c/g"), TokenType::kRegex);
  EXPECT_EQ(type_of_last("x = a / b"), TokenType::kIdentifier);
  EXPECT_EQ(type_of_last("return /re/"), TokenType::kRegex);
  EXPECT_EQ(type_of_last("if (x) /re/"), TokenType::kRegex);
  EXPECT_EQ(type_of_last("f(x) / 2"), TokenType::kNumber);
  EXPECT_EQ(type_of_last("x.replace(/a/g, 'b')"), TokenType::kPunct);
  EXPECT_EQ(type_of_last("var x = {a: 1} / 2"), TokenType::kNumber);
}

TEST(Lexer, TemplateWithNestedSubstitutions) {
  auto result = lex("`a ${1 + `b ${2} c`} d`");
  ASSERT_GE(result.tokens.size(), 7u);
  EXPECT_EQ(result.tokens[0].type, TokenType::kTemplateHead);
  EXPECT_EQ(result.tokens.back().type, TokenType::kTemplateTail);
}

TEST(Lexer, TemplateBracesDoNotLeak) {
  // The } inside the template must close the substitution, not a block.
  auto result = lex("function f(){ return `x${1}y`; }");
  EXPECT_EQ(std::string(muzeel::js::token_text(result.tokens.back(), "function f(){ return `x${1}y`; }")), "}");
}

TEST(Lexer, UnterminatedInputsThrow) {
  EXPECT_THROW(lex("\"abc"), ParseError);
  EXPECT_THROW(lex("`abc ${1"), ParseError);
  EXPECT_THROW(lex("/* never closed"), ParseError);
  EXPECT_THROW(lex("var re = /abc"), ParseError);
  EXPECT_THROW(lex("(a + b"), ParseError);
}

TEST(Lexer, LineContinuationInString) {
  auto result = lex("var s = 'a\\\nb';\nvar t = 1;");
  EXPECT_EQ(result.tokens.back().line, 3);
}

TEST(Lexer, CountLines) {
  EXPECT_EQ(muzeel::js::count_lines(""), 0);
  EXPECT_EQ(muzeel::js::count_lines("a"), 1);
  EXPECT_EQ(muzeel::js::count_lines("a\n"), 1);
  EXPECT_EQ(muzeel::js::count_lines("a\nb"), 2);
  EXPECT_EQ(muzeel::js::count_lines("a\nb\n"), 2);
}
