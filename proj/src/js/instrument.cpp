#include "muzeel/js/instrument.hpp"

#include <algorithm>

#include "muzeel/js/lexer.hpp"
#include "muzeel/js/scanner.hpp"

namespace muzeel::js {

namespace {

struct Insertion {
  size_t pos;
  std::string text;
  int phase;     // 0 = probe/prefix, 1 = suffix
  size_t begin;  // range start, orders suffixes that share a position
};

void verify_spans_match(const ScanResult& scanned, const std::vector<FunctionSpan>& spans) {
  std::set<std::pair<int, int>> seen;
  std::vector<FunctionSpan> dedup;
  for (const auto& f : scanned.functions) {
    if (seen.insert({f.span.start_line, f.span.end_line}).second) dedup.push_back(f.span);
  }
  if (dedup.size() != spans.size()) {
    throw ConsistencyError("span list does not match a scan of this source");
  }
  for (size_t i = 0; i < dedup.size(); ++i) {
    if (!(dedup[i] == spans[i])) {
      throw ConsistencyError("span list does not match a scan of this source");
    }
  }
}

std::string apply_insertions(std::string_view source, std::vector<Insertion> edits) {
  std::sort(edits.begin(), edits.end(), [](const Insertion& a, const Insertion& b) {
    if (a.pos != b.pos) return a.pos > b.pos;
    if (a.phase != b.phase) return a.phase < b.phase;
    return a.begin < b.begin;
  });
  std::string out(source);
  for (const auto& e : edits) {
    out.insert(e.pos, e.text);
  }
  return out;
}

}  // namespace

InstrumentedSource instrument(std::string_view source, const std::vector<FunctionSpan>& spans,
                              const std::string& file_name, std::string_view probe_token) {
  ScanResult scanned = scan(source, file_name);
  verify_spans_match(scanned, spans);

  std::vector<Insertion> edits;
  for (const auto& f : scanned.functions) {
    std::string lit = probe_string_literal(SpanKey(f.span), probe_token);
    if (f.block_body) {
      edits.push_back({f.body_open + 1, "console.log(" + lit + ");", 0, f.body_open});
    } else {
      edits.push_back(
          {f.expr_begin, "{void console.log(" + lit + ");return ", 0, f.expr_begin});
      edits.push_back({f.expr_end, ";}", 1, f.expr_begin});
    }
  }
  for (const auto& e : edits) {
    if (e.text.find('\n') != std::string::npos) {
      throw InstrumentError("probe text would add a line");
    }
  }

  InstrumentedSource out;
  out.file_name = file_name;
  out.text = apply_insertions(source, std::move(edits));
  out.spans = spans;
  out.probe_token = std::string(probe_token);
  if (count_lines(out.text) != count_lines(source)) {
    throw InstrumentError("instrumentation changed the line count");
  }
  return out;
}

std::string strip_probes(std::string_view instrumented_text, std::string_view probe_token) {
  LexResult lexed = lex(instrumented_text);
  const auto& toks = lexed.tokens;
  std::vector<size_t> match = match_brackets(toks, instrumented_text);

  std::string quoted_prefix = "\"";
  quoted_prefix += probe_token;

  // Byte ranges to delete, collected then applied back to front.
  std::vector<std::pair<size_t, size_t>> cuts;

  auto text_of = [&](size_t i) { return token_text(toks[i], instrumented_text); };

  for (size_t k = 0; k < toks.size(); ++k) {
    if (toks[k].type != TokenType::kString) continue;
    if (text_of(k).substr(0, quoted_prefix.size()) != quoted_prefix) continue;
    // Expected shape: console . log ( "…" ) ;
    if (k < 4 || k + 2 >= toks.size()) continue;
    if (!(text_of(k - 4) == "console" && text_of(k - 3) == "." && text_of(k - 2) == "log" &&
          text_of(k - 1) == "(" && text_of(k + 1) == ")" && text_of(k + 2) == ";")) {
      continue;
    }
    bool wrapper = k >= 6 && text_of(k - 5) == "void" && text_of(k - 6) == "{";
    if (wrapper) {
      // { void console.log("…"); return <expr> ; }
      size_t open = k - 6;
      size_t close = match[open];
      if (close == SIZE_MAX || k + 3 >= toks.size() || text_of(k + 3) != "return") {
        throw InstrumentError("malformed probe wrapper");
      }
      size_t expr_from = toks[k + 3].end() + 1;  // skip "return "
      size_t close_off = toks[close].offset;
      if (close_off < 1 || instrumented_text[close_off - 1] != ';' ||
          expr_from > close_off - 1) {
        throw InstrumentError("malformed probe wrapper");
      }
      cuts.push_back({toks[open].offset, expr_from});  // "{void console.log(...);return "
      cuts.push_back({close_off - 1, close_off + 1});  // ";}"
    } else {
      cuts.push_back({toks[k - 4].offset, toks[k + 2].end()});
    }
  }

  std::sort(cuts.begin(), cuts.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::string out(instrumented_text);
  for (const auto& [from, to] : cuts) {
    out.erase(from, to - from);
  }
  return out;
}

}  // namespace muzeel::js
