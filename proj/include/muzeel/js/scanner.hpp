#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "muzeel/js/lexer.hpp"
#include "muzeel/js/span.hpp"

namespace muzeel::js {

// A function found in a source file, with the byte-level geometry the
// rewriting passes need on top of the public span.
struct ScannedFunction {
  FunctionSpan span;
  bool block_body = true;     // false only for expression-bodied arrows
  size_t header_begin = 0;    // offset of the first token of the construct
  size_t body_open = 0;       // offset of '{' when block_body
  size_t body_close = 0;      // offset of the matching '}'
  size_t expr_begin = 0;      // expression-body byte range [begin, end)
  size_t expr_end = 0;

  bool contains(const ScannedFunction& other) const {
    size_t b = block_body ? body_open : expr_begin;
    size_t e = block_body ? body_close + 1 : expr_end;
    size_t ob = other.header_begin;
    return ob > b && ob < e;
  }
};

struct ScanResult {
  std::vector<ScannedFunction> functions;  // pre-order (outer before inner)
  int line_count = 0;
};

// Finds every function in the source: declarations, expressions, arrows,
// methods, getters/setters, generators and async variants, with nesting.
// String, template, regex and comment contents never produce boundaries.
// Throws ParseError when the source cannot be tokenized.
ScanResult scan(std::string_view source, const std::string& file_name);

// Public contract: spans only, pre-order. Nested one-line functions whose
// (start, end) collide with their enclosing function collapse into the outer
// span so the triple stays unique.
std::vector<FunctionSpan> scan_functions(std::string_view source, const std::string& file_name);

}  // namespace muzeel::js
