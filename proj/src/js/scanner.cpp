#include "muzeel/js/scanner.hpp"

#include <algorithm>

namespace muzeel::js {

namespace {

bool is_open(const Token& t, std::string_view src) {
  if (t.type == TokenType::kTemplateHead) return true;
  return t.type == TokenType::kPunct && t.length == 1 &&
         (src[t.offset] == '(' || src[t.offset] == '[' || src[t.offset] == '{');
}
bool is_close(const Token& t, std::string_view src) {
  if (t.type == TokenType::kTemplateTail) return true;
  return t.type == TokenType::kPunct && t.length == 1 &&
         (src[t.offset] == ')' || src[t.offset] == ']' || src[t.offset] == '}');
}

struct Walker {
  std::string_view src;
  const std::string& file;
  const std::vector<Token>& toks;
  std::vector<size_t> match;  // open index -> close index and back
  std::vector<ScannedFunction> out;

  Walker(std::string_view s, const std::string& f, const std::vector<Token>& t)
      : src(s), file(f), toks(t), match(t.size(), SIZE_MAX) {}

  void build_match() { match = match_brackets(toks, src); }

  bool is(size_t i, std::string_view text) const {
    return i < toks.size() && token_text_is(toks[i], src, text);
  }
  bool is_ident(size_t i) const {
    return i < toks.size() && toks[i].type == TokenType::kIdentifier;
  }
  bool is_key_token(size_t i) const {
    return i < toks.size() && (toks[i].type == TokenType::kIdentifier ||
                               toks[i].type == TokenType::kString ||
                               toks[i].type == TokenType::kNumber);
  }

  // ---- span recording -------------------------------------------------

  FunctionKind resolve_kind(bool getter_setter, bool generator, bool async, FunctionKind base) {
    if (getter_setter) return FunctionKind::kGetterSetter;
    if (generator) return FunctionKind::kGenerator;
    if (async) return FunctionKind::kAsyncVariant;
    return base;
  }

  void record_block(size_t first_tok, size_t open_tok, FunctionKind kind) {
    ScannedFunction f;
    f.span.file_name = file;
    f.span.start_line = toks[first_tok].line;
    f.span.end_line = toks[match[open_tok]].line;
    f.span.kind = kind;
    f.block_body = true;
    f.header_begin = toks[first_tok].offset;
    f.body_open = toks[open_tok].offset;
    f.body_close = toks[match[open_tok]].offset;
    out.push_back(f);
  }

  // ---- constructs ------------------------------------------------------

  // 'function' keyword construct; |first| is the construct start (possibly an
  // 'async' before i). Returns the index just past the body.
  size_t walk_function(size_t i, size_t first, bool async) {
    size_t j = i + 1;
    bool generator = false;
    if (is(j, "*")) {
      generator = true;
      ++j;
    }
    if (is_ident(j)) ++j;  // optional name
    if (!is(j, "(")) throw ParseError("expected '(' in function", toks[i].line, toks[i].column);
    size_t close_paren = match[j];
    size_t open_body = close_paren + 1;
    if (!is(open_body, "{")) {
      throw ParseError("expected '{' after parameter list", toks[close_paren].line,
                       toks[close_paren].column);
    }
    // Declaration vs expression by what precedes the construct. A token that
    // can end a statement leaves the function in statement position.
    FunctionKind base = FunctionKind::kDeclaration;
    if (first > 0) {
      const Token& p = toks[first - 1];
      if (p.type == TokenType::kPunct) {
        auto t = token_text(p, src);
        if (t != "}" && t != ";" && t != ")" && t != "]" && t != "{") {
          base = FunctionKind::kExpression;
        }
      } else if (p.type == TokenType::kIdentifier) {
        auto t = token_text(p, src);
        if (t == "return" || t == "typeof" || t == "void" || t == "delete" || t == "case" ||
            t == "in" || t == "of" || t == "new" || t == "do" || t == "yield" || t == "await") {
          base = FunctionKind::kExpression;
        }
      }
    }
    record_block(first, open_body, resolve_kind(false, generator, async, base));
    walk_range(j + 1, close_paren);          // default-parameter expressions
    walk_range(open_body + 1, match[open_body]);
    return match[open_body] + 1;
  }

  size_t walk_class(size_t i) {
    size_t j = i + 1;
    if (is_ident(j) && !is(j, "extends")) ++j;
    if (is(j, "extends")) {
      ++j;
      size_t expr_start = j;
      while (j < toks.size() && !is(j, "{")) {
        if (is_open(toks[j], src)) {
          j = match[j] + 1;
        } else {
          ++j;
        }
      }
      walk_range(expr_start, j);
    }
    if (!is(j, "{")) throw ParseError("expected class body", toks[i].line, toks[i].column);
    walk_class_body(j + 1, match[j]);
    return match[j] + 1;
  }

  // Arrow at the '=>' token. Finds the construct start by scanning backwards
  // over the parameter list.
  size_t walk_arrow(size_t i) {
    size_t first = i;
    bool async = false;
    if (i > 0) {
      const Token& p = toks[i - 1];
      if (p.type == TokenType::kPunct && token_text(p, src) == ")") {
        first = match[i - 1];
        if (first > 0 && is(first - 1, "async")) {
          --first;
          async = true;
        }
      } else if (p.type == TokenType::kIdentifier) {
        first = i - 1;
        if (first > 0 && is(first - 1, "async")) {
          --first;
          async = true;
        }
      }
    }
    size_t body = i + 1;
    if (body >= toks.size()) throw ParseError("arrow without body", toks[i].line, toks[i].column);
    if (is(body, "{")) {
      record_block(first, body, resolve_kind(false, false, async, FunctionKind::kArrowBlock));
      walk_range(body + 1, match[body]);
      return match[body] + 1;
    }
    // Expression body: find its last token.
    size_t last = find_expression_end(body);
    ScannedFunction f;
    f.span.file_name = file;
    f.span.start_line = toks[first].line;
    f.span.end_line = toks[last].line;
    f.span.kind = resolve_kind(false, false, async, FunctionKind::kArrowExpression);
    f.block_body = false;
    f.header_begin = toks[first].offset;
    f.expr_begin = toks[body].offset;
    f.expr_end = toks[last].end();
    out.push_back(f);
    // Do not skip: walking the body finds nested functions.
    return i + 1;
  }

  static bool ends_expression(const Token& t, std::string_view src) {
    switch (t.type) {
      case TokenType::kIdentifier:
      case TokenType::kNumber:
      case TokenType::kString:
      case TokenType::kRegex:
      case TokenType::kTemplate:
      case TokenType::kTemplateTail:
        return true;
      case TokenType::kPunct: {
        auto x = token_text(t, src);
        return x == ")" || x == "]" || x == "}" || x == "++" || x == "--";
      }
      default:
        return false;
    }
  }

  static bool continues_expression(const Token& t, std::string_view src) {
    if (t.type != TokenType::kPunct) {
      if (t.type == TokenType::kIdentifier) {
        auto x = token_text(t, src);
        return x == "instanceof" || x == "in";
      }
      return false;
    }
    auto x = token_text(t, src);
    if (x == "++" || x == "--" || x == "{") return false;
    return true;  // binary/assignment operators, '.', '(', '[', ',', etc.
  }

  // Index of the last token of the assignment-expression starting at |start|.
  size_t find_expression_end(size_t start) {
    int ternary = 0;
    size_t j = start;
    size_t last = start;
    while (j < toks.size()) {
      const Token& t = toks[j];
      if (t.type == TokenType::kTemplateMiddle) break;  // closes enclosing substitution
      if (is_close(t, src)) break;
      if (t.type == TokenType::kPunct && t.length == 1) {
        char c = src[t.offset];
        if (c == ',' || c == ';') break;
        if (c == '?') ++ternary;
        if (c == ':') {
          if (ternary == 0) break;
          --ternary;
        }
      }
      // Automatic semicolon insertion: a new line starting a fresh expression
      // terminates the body.
      if (j > start && t.line > toks[j - 1].line && ends_expression(toks[j - 1], src) &&
          !continues_expression(t, src)) {
        break;
      }
      if (is_open(t, src)) {
        last = match[j];
        j = match[j] + 1;
        continue;
      }
      last = j;
      ++j;
    }
    return last;
  }

  // Object-literal body: property list between tokens [lo, hi).
  void walk_object(size_t lo, size_t hi) {
    size_t i = lo;
    while (i < hi) {
      if (is(i, ",") || is(i, ";")) {
        ++i;
        continue;
      }
      if (is(i, "...")) {
        i = walk_value(i + 1, hi);
        continue;
      }
      size_t member_start = i;
      bool getter_setter = false, generator = false, async = false;
      // Modifier tokens are only modifiers when another key follows.
      while (i < hi) {
        if ((is(i, "get") || is(i, "set")) && i + 1 < hi &&
            (is_key_token(i + 1) || is(i + 1, "["))) {
          getter_setter = true;
          ++i;
        } else if (is(i, "async") && i + 1 < hi &&
                   (is_key_token(i + 1) || is(i + 1, "[") || is(i + 1, "*"))) {
          async = true;
          ++i;
        } else if (is(i, "*")) {
          generator = true;
          ++i;
        } else {
          break;
        }
      }
      // Key.
      if (is(i, "[")) {
        size_t close = match[i];
        walk_range(i + 1, close);
        i = close + 1;
      } else if (is_key_token(i)) {
        ++i;
      } else {
        i = walk_token(i);  // lenient: unexpected token, fall through
        continue;
      }
      if (is(i, "(")) {
        // Method.
        size_t close_paren = match[i];
        size_t open_body = close_paren + 1;
        if (is(open_body, "{")) {
          record_block(member_start, open_body,
                       resolve_kind(getter_setter, generator, async, FunctionKind::kMethod));
          walk_range(i + 1, close_paren);
          walk_range(open_body + 1, match[open_body]);
          i = match[open_body] + 1;
          continue;
        }
      }
      if (is(i, ":") || is(i, "=")) {
        i = walk_value(i + 1, hi);
        continue;
      }
      // Shorthand property or lenient recovery.
    }
  }

  // Walks one property value (an assignment expression) and returns the index
  // of the ',' terminating it (or hi).
  size_t walk_value(size_t i, size_t hi) {
    while (i < hi && !is(i, ",")) {
      i = walk_token(i);
    }
    return i;
  }

  void walk_class_body(size_t lo, size_t hi) {
    size_t i = lo;
    while (i < hi) {
      if (is(i, ";") || is(i, ",")) {
        ++i;
        continue;
      }
      size_t member_start = i;
      bool getter_setter = false, generator = false, async = false;
      if (is(i, "static") && i + 1 < hi && !is(i + 1, "(") && !is(i + 1, "=")) ++i;
      while (i < hi) {
        if ((is(i, "get") || is(i, "set")) && i + 1 < hi &&
            (is_key_token(i + 1) || is(i + 1, "[") || is(i + 1, "#"))) {
          getter_setter = true;
          ++i;
        } else if (is(i, "async") && i + 1 < hi &&
                   (is_key_token(i + 1) || is(i + 1, "[") || is(i + 1, "*") || is(i + 1, "#"))) {
          async = true;
          ++i;
        } else if (is(i, "*")) {
          generator = true;
          ++i;
        } else {
          break;
        }
      }
      if (is(i, "#")) ++i;  // private member name
      if (is(i, "[")) {
        size_t close = match[i];
        walk_range(i + 1, close);
        i = close + 1;
      } else if (is_key_token(i)) {
        ++i;
      } else {
        i = walk_token(i);
        continue;
      }
      if (is(i, "(")) {
        size_t close_paren = match[i];
        size_t open_body = close_paren + 1;
        if (is(open_body, "{")) {
          record_block(member_start, open_body,
                       resolve_kind(getter_setter, generator, async, FunctionKind::kMethod));
          walk_range(i + 1, close_paren);
          walk_range(open_body + 1, match[open_body]);
          i = match[open_body] + 1;
          continue;
        }
      }
      if (is(i, "=")) {
        // Class field initializer: consume to ';' at this level.
        ++i;
        while (i < hi && !is(i, ";")) i = walk_token(i);
        continue;
      }
      // Bare field declaration or recovery.
    }
  }

  // '{' with no known purpose: object literal when the previous token demands
  // an expression.
  bool brace_is_object(size_t i) const {
    if (i == 0) return false;
    const Token& p = toks[i - 1];
    if (p.type == TokenType::kPunct) {
      auto t = token_text(p, src);
      if (t == ")" || t == "}" || t == ";" || t == "{") return false;
      return true;
    }
    if (p.type == TokenType::kIdentifier) {
      auto t = token_text(p, src);
      return t == "return" || t == "typeof" || t == "case" || t == "in" || t == "of" ||
             t == "delete" || t == "void" || t == "yield" || t == "await" || t == "default";
    }
    if (p.type == TokenType::kTemplateHead || p.type == TokenType::kTemplateMiddle) return true;
    return false;
  }

  // Processes the construct at token i; returns the index after it.
  size_t walk_token(size_t i) {
    const Token& t = toks[i];
    if (t.type == TokenType::kIdentifier) {
      auto text = token_text(t, src);
      if (text == "function") {
        bool async = i > 0 && is(i - 1, "async") &&
                     toks[i - 1].line == t.line;  // 'async \n function' has ASI between
        return walk_function(i, async ? i - 1 : i, async);
      }
      if (text == "class") return walk_class(i);
      return i + 1;
    }
    if (t.type == TokenType::kPunct) {
      auto text = token_text(t, src);
      if (text == "=>") return walk_arrow(i);
      if (text == "(" || text == "[") {
        walk_range(i + 1, match[i]);
        return match[i] + 1;
      }
      if (text == "{") {
        if (brace_is_object(i)) {
          walk_object(i + 1, match[i]);
        } else {
          walk_range(i + 1, match[i]);
        }
        return match[i] + 1;
      }
    }
    if (t.type == TokenType::kTemplateHead) {
      walk_range(i + 1, match[i]);
      return match[i] + 1;
    }
    return i + 1;
  }

  void walk_range(size_t lo, size_t hi) {
    size_t i = lo;
    while (i < hi) {
      size_t next = walk_token(i);
      i = next > i ? next : i + 1;
    }
  }

  std::vector<ScannedFunction> run() {
    build_match();
    walk_range(0, toks.size());
    // Pre-order: by header offset; an outer construct always starts first,
    // and on a tie (arrow parameter sharing the header start) the longer one
    // is outer.
    std::stable_sort(out.begin(), out.end(), [](const ScannedFunction& a, const ScannedFunction& b) {
      if (a.header_begin != b.header_begin) return a.header_begin < b.header_begin;
      size_t ae = a.block_body ? a.body_close : a.expr_end;
      size_t be = b.block_body ? b.body_close : b.expr_end;
      return ae > be;
    });
    return out;
  }
};

}  // namespace

ScanResult scan(std::string_view source, const std::string& file_name) {
  LexResult lexed = lex(source);
  Walker walker(source, file_name, lexed.tokens);
  ScanResult result;
  result.functions = walker.run();
  result.line_count = lexed.line_count;
  return result;
}

std::vector<FunctionSpan> scan_functions(std::string_view source, const std::string& file_name) {
  ScanResult r = scan(source, file_name);
  // Line granularity can give two functions the same triple (a one-line
  // nesting, or siblings sharing a line). The triple is the identity: such
  // functions share one span and one fate; the first (outermost) occurrence
  // carries the kind.
  std::set<std::pair<int, int>> seen;
  std::vector<FunctionSpan> spans;
  spans.reserve(r.functions.size());
  for (const auto& f : r.functions) {
    if (seen.insert({f.span.start_line, f.span.end_line}).second) {
      spans.push_back(f.span);
    }
  }
  return spans;
}

}  // namespace muzeel::js
