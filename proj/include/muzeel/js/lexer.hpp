#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "muzeel/js/span.hpp"

namespace muzeel::js {

enum class TokenType {
  kIdentifier,   // identifiers and keywords alike; disambiguate by text
  kPunct,
  kString,       // 'single' or "double" quoted, quotes included
  kNumber,
  kRegex,        // /pattern/flags
  kTemplate,     // `whole template` with no substitutions
  kTemplateHead, // `head${
  kTemplateMiddle, // }middle${
  kTemplateTail, // }tail`
};

struct Token {
  TokenType type;
  size_t offset = 0;   // byte offset into the source
  size_t length = 0;
  int line = 1;        // 1-based line of the first byte
  int column = 1;

  size_t end() const { return offset + length; }
};

// How a '{' was classified at lex time. Only drives regex-vs-division
// decisions and template resumption; the function scanner re-derives richer
// context on its own.
enum class BraceKind { kBlock, kObjectLiteral, kTemplateSubst };

struct LexResult {
  std::vector<Token> tokens;
  int line_count = 1;  // total lines in the source (empty source counts as 1... see lexer)
};

// Tokenizes an ES2017-subset JavaScript source. Handles comments, string
// escapes and line continuations, template literals with nested
// substitutions, and the regex-vs-division ambiguity. Throws ParseError on
// malformed input (unterminated string/template/regex/comment).
LexResult lex(std::string_view source);

// Number of lines in a text, where a trailing newline does not open a new
// line and the empty text has zero lines.
int count_lines(std::string_view text);

bool token_text_is(const Token& tok, std::string_view source, std::string_view text);
std::string_view token_text(const Token& tok, std::string_view source);

// Pairs up (), [], {} and template head/tail tokens. match[i] is the index of
// the partner token, SIZE_MAX for non-bracket tokens. Throws ParseError on
// imbalance.
std::vector<size_t> match_brackets(const std::vector<Token>& tokens, std::string_view source);

}  // namespace muzeel::js
