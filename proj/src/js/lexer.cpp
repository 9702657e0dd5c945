#include "muzeel/js/lexer.hpp"

#include <array>
#include <cctype>

namespace muzeel::js {

namespace {

bool is_id_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool is_id_part(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

// Keywords after which an expression (and therefore a regex literal) may
// start.
bool is_expression_keyword(std::string_view w) {
  static const std::array<std::string_view, 16> kWords = {
      "return", "typeof", "instanceof", "in",    "of",    "new",
      "delete", "void",   "throw",      "case",  "do",    "else",
      "yield",  "await",  "extends",    "default"};
  for (auto k : kWords) {
    if (w == k) return true;
  }
  return false;
}

// Keywords that may directly precede a '{' that is a block, not an object
// literal (do/else/try/finally).
bool is_block_keyword(std::string_view w) {
  return w == "do" || w == "else" || w == "try" || w == "finally";
}

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  std::vector<Token> tokens;

  // Significant-token history for regex/brace disambiguation.
  bool has_prev = false;
  Token prev{};

  // Parallel stacks describing open brackets.
  struct Open {
    char ch;           // '(' '[' '{'
    BraceKind brace;   // valid when ch == '{'
    bool control_paren = false;  // '(' directly after if/for/while/...
  };
  std::vector<Open> opens;

  explicit Lexer(std::string_view s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  char peek(size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  bool eof() const { return pos >= src.size(); }

  void advance() {
    char c = src[pos];
    ++pos;
    if (c == '\n') {
      ++line;
      col = 1;
    } else if (c == '\r') {
      if (pos < src.size() && src[pos] == '\n') ++pos;
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!eof() && peek() != '\n' && peek() != '\r') advance();
      } else if (c == '/' && peek(1) == '*') {
        int start_line = line, start_col = col;
        advance();
        advance();
        bool closed = false;
        while (!eof()) {
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) throw ParseError("unterminated block comment", start_line, start_col);
      } else {
        break;
      }
    }
  }

  std::string_view prev_text() const {
    return has_prev ? src.substr(prev.offset, prev.length) : std::string_view{};
  }

  bool prev_is(std::string_view text) const {
    return has_prev && prev_text() == text;
  }

  // True when a '/' at the current position starts a regex literal rather
  // than a division operator.
  bool regex_allowed() const {
    if (!has_prev) return true;
    switch (prev.type) {
      case TokenType::kNumber:
      case TokenType::kString:
      case TokenType::kRegex:
      case TokenType::kTemplate:
      case TokenType::kTemplateTail:
        return false;
      case TokenType::kIdentifier:
        return is_expression_keyword(prev_text());
      case TokenType::kTemplateHead:
      case TokenType::kTemplateMiddle:
        return true;
      case TokenType::kPunct: {
        auto t = prev_text();
        if (t == ")") {
          // Regex may follow the closing paren of a control clause:
          // if (x) /re/.test(y)
          return last_close_was_control_;
        }
        if (t == "]") return false;
        if (t == "}") return last_close_brace_ != BraceKind::kObjectLiteral;
        if (t == "++" || t == "--") return false;
        return true;
      }
    }
    return true;
  }

  bool last_close_was_control_ = false;
  BraceKind last_close_brace_ = BraceKind::kBlock;

  void push_token(TokenType type, size_t start, int tline, int tcol) {
    Token t;
    t.type = type;
    t.offset = start;
    t.length = pos - start;
    t.line = tline;
    t.column = tcol;
    tokens.push_back(t);
    prev = t;
    has_prev = true;
  }

  void lex_string() {
    char quote = peek();
    size_t start = pos;
    int tline = line, tcol = col;
    advance();
    while (true) {
      if (eof()) throw ParseError("unterminated string literal", tline, tcol);
      char c = peek();
      if (c == '\\') {
        advance();
        if (!eof()) advance();  // escaped char, possibly a line continuation
        continue;
      }
      if (c == '\n' || c == '\r') throw ParseError("newline in string literal", line, col);
      advance();
      if (c == quote) break;
    }
    push_token(TokenType::kString, start, tline, tcol);
  }

  // Scans template characters starting after a ` or a }. Emits the
  // appropriate template token and pushes a substitution marker when the
  // template continues with ${.
  void lex_template_piece(bool from_resume) {
    size_t start = pos - 1;  // includes the ` or } that got us here
    int tline = line, tcol = col - 1;
    while (true) {
      if (eof()) throw ParseError("unterminated template literal", tline, tcol);
      char c = peek();
      if (c == '\\') {
        advance();
        if (!eof()) advance();
        continue;
      }
      if (c == '`') {
        advance();
        push_token(from_resume ? TokenType::kTemplateTail : TokenType::kTemplate, start, tline,
                   tcol);
        return;
      }
      if (c == '$' && peek(1) == '{') {
        advance();
        advance();
        push_token(from_resume ? TokenType::kTemplateMiddle : TokenType::kTemplateHead, start,
                   tline, tcol);
        opens.push_back({'{', BraceKind::kTemplateSubst, false});
        return;
      }
      advance();
    }
  }

  void lex_regex() {
    size_t start = pos;
    int tline = line, tcol = col;
    advance();  // leading /
    bool in_class = false;
    while (true) {
      if (eof()) throw ParseError("unterminated regex literal", tline, tcol);
      char c = peek();
      if (c == '\n' || c == '\r') throw ParseError("newline in regex literal", line, col);
      if (c == '\\') {
        advance();
        if (!eof()) advance();
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      advance();
      if (c == '/' && !in_class) break;
    }
    while (!eof() && is_id_part(static_cast<unsigned char>(peek()))) advance();  // flags
    push_token(TokenType::kRegex, start, tline, tcol);
  }

  void lex_number() {
    size_t start = pos;
    int tline = line, tcol = col;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' || peek(1) == 'O' ||
                          peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) advance();
    } else {
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.') {
        advance();
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    push_token(TokenType::kNumber, start, tline, tcol);
  }

  // '{' is an object literal when the previous token can only end there if an
  // expression follows.
  BraceKind classify_brace() const {
    if (!has_prev) return BraceKind::kBlock;
    switch (prev.type) {
      case TokenType::kIdentifier: {
        auto t = prev_text();
        if (is_block_keyword(t)) return BraceKind::kBlock;
        if (is_expression_keyword(t)) return BraceKind::kObjectLiteral;
        return BraceKind::kBlock;  // function/class names, control headers
      }
      case TokenType::kPunct: {
        auto t = prev_text();
        if (t == ")" || t == "}" || t == "{" || t == ";") return BraceKind::kBlock;
        if (t == "=>") return BraceKind::kBlock;  // arrow body; scanner refines
        return BraceKind::kObjectLiteral;         // = ( [ , : ? operators
      }
      default:
        return BraceKind::kBlock;
    }
  }

  void lex_punct() {
    size_t start = pos;
    int tline = line, tcol = col;
    char c = peek();

    static const std::array<std::string_view, 36> kMulti = {
        ">>>=", "===", "!==", "**=", "<<=", ">>=", ">>>", "...", "=>", "**", "==", "!=",
        "<=",   ">=",  "&&",  "||",  "++",  "--",  "<<",  ">>",  "+=", "-=", "*=", "/=",
        "%=",   "&=",  "|=",  "^=",  "?.",  "??",  "+",   "-",   "*",  "%",  "&",  "|"};
    std::string_view rest = src.substr(pos);
    std::string_view matched;
    for (auto m : kMulti) {
      if (rest.substr(0, m.size()) == m) {
        // '?.' followed by a digit is a ternary with a fraction, not chaining
        if (m == "?." && rest.size() > 2 && std::isdigit(static_cast<unsigned char>(rest[2]))) {
          continue;
        }
        matched = m;
        break;
      }
    }

    bool control_paren = false;
    if (c == '(') {
      auto p = prev_text();
      control_paren = has_prev && prev.type == TokenType::kIdentifier &&
                      (p == "if" || p == "for" || p == "while" || p == "with" || p == "switch" ||
                       p == "catch");
      opens.push_back({'(', BraceKind::kBlock, control_paren});
    } else if (c == '[') {
      opens.push_back({'[', BraceKind::kBlock, false});
    } else if (c == '{') {
      opens.push_back({'{', classify_brace(), false});
    } else if (c == ')') {
      if (opens.empty() || opens.back().ch != '(') fail("unbalanced ')'");
      last_close_was_control_ = opens.back().control_paren;
      opens.pop_back();
    } else if (c == ']') {
      if (opens.empty() || opens.back().ch != '[') fail("unbalanced ']'");
      opens.pop_back();
    } else if (c == '}') {
      if (opens.empty() || opens.back().ch != '{') fail("unbalanced '}'");
      BraceKind kind = opens.back().brace;
      opens.pop_back();
      if (kind == BraceKind::kTemplateSubst) {
        advance();  // consume '}' and resume template scanning
        lex_template_piece(/*from_resume=*/true);
        return;
      }
      last_close_brace_ = kind;
    }

    if (!matched.empty()) {
      for (size_t i = 0; i < matched.size(); ++i) advance();
    } else {
      advance();
    }
    push_token(TokenType::kPunct, start, tline, tcol);
  }

  LexResult run() {
    while (true) {
      skip_trivia();
      if (eof()) break;
      char c = peek();
      if (c == '"' || c == '\'') {
        lex_string();
      } else if (c == '`') {
        int tline = line, tcol = col;
        advance();
        (void)tline;
        (void)tcol;
        lex_template_piece(/*from_resume=*/false);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
      } else if (is_id_start(static_cast<unsigned char>(c))) {
        size_t start = pos;
        int tline = line, tcol = col;
        while (!eof() && is_id_part(static_cast<unsigned char>(peek()))) advance();
        push_token(TokenType::kIdentifier, start, tline, tcol);
      } else if (c == '/') {
        if (regex_allowed()) {
          lex_regex();
        } else {
          lex_punct();
        }
      } else if (std::ispunct(static_cast<unsigned char>(c))) {
        lex_punct();
      } else {
        fail("unexpected character");
      }
    }
    if (!opens.empty()) {
      fail(std::string("unclosed '") + opens.back().ch + "'");
    }
    LexResult out;
    out.tokens = std::move(tokens);
    out.line_count = count_lines(src);
    return out;
  }
};

}  // namespace

LexResult lex(std::string_view source) { return Lexer(source).run(); }

int count_lines(std::string_view text) {
  if (text.empty()) return 0;
  int n = 1;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++n;
    } else if (text[i] == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++n;
    }
  }
  if (text.back() == '\n' || text.back() == '\r') --n;
  return n;
}

bool token_text_is(const Token& tok, std::string_view source, std::string_view text) {
  return source.substr(tok.offset, tok.length) == text;
}

std::string_view token_text(const Token& tok, std::string_view source) {
  return source.substr(tok.offset, tok.length);
}

std::vector<size_t> match_brackets(const std::vector<Token>& tokens, std::string_view source) {
  auto opens = [&](const Token& t) {
    if (t.type == TokenType::kTemplateHead) return true;
    if (t.type != TokenType::kPunct || t.length != 1) return false;
    char c = source[t.offset];
    return c == '(' || c == '[' || c == '{';
  };
  auto closes = [&](const Token& t) {
    if (t.type == TokenType::kTemplateTail) return true;
    if (t.type != TokenType::kPunct || t.length != 1) return false;
    char c = source[t.offset];
    return c == ')' || c == ']' || c == '}';
  };
  std::vector<size_t> match(tokens.size(), SIZE_MAX);
  std::vector<size_t> stack;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.type == TokenType::kTemplateMiddle) continue;
    if (opens(t)) {
      stack.push_back(i);
    } else if (closes(t)) {
      if (stack.empty()) throw ParseError("unbalanced bracket", t.line, t.column);
      match[stack.back()] = i;
      match[i] = stack.back();
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    const Token& t = tokens[stack.back()];
    throw ParseError("unclosed bracket", t.line, t.column);
  }
  return match;
}

}  // namespace muzeel::js
