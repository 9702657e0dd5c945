#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace muzeel::js {

// Function classification. A function gets exactly one kind; when several
// apply (an async generator method, say) the most specific wins in the order
// getter_setter > generator > async_variant > method > arrow > plain.
enum class FunctionKind {
  kDeclaration,
  kExpression,
  kArrowBlock,
  kArrowExpression,
  kMethod,
  kGetterSetter,
  kGenerator,
  kAsyncVariant,
};

const char* to_string(FunctionKind kind);
FunctionKind kind_from_string(const std::string& name);

// Identity of one JavaScript function: the file it lives in plus the 1-based
// line of its header and of its closing delimiter, both on the original
// (un-instrumented) source.
struct FunctionSpan {
  std::string file_name;
  int start_line = 0;
  int end_line = 0;
  FunctionKind kind = FunctionKind::kDeclaration;

  std::tuple<const std::string&, int, int> key() const {
    return {file_name, start_line, end_line};
  }
  friend bool operator==(const FunctionSpan& a, const FunctionSpan& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const FunctionSpan& a, const FunctionSpan& b) {
    return a.key() < b.key();
  }
};

// (file, start, end) triple used as identity in logs and the used set, where
// the kind is not recoverable.
struct SpanKey {
  std::string file_name;
  int start_line = 0;
  int end_line = 0;

  SpanKey() = default;
  SpanKey(std::string file, int start, int end)
      : file_name(std::move(file)), start_line(start), end_line(end) {}
  explicit SpanKey(const FunctionSpan& s)
      : file_name(s.file_name), start_line(s.start_line), end_line(s.end_line) {}

  friend auto operator<=>(const SpanKey&, const SpanKey&) = default;
};

// Set of function identities observed executing. Duplicate observations
// collapse; membership is by (file, start, end).
class UsedSet {
 public:
  void insert(const SpanKey& key) { keys_.insert(key); }
  void insert(const FunctionSpan& span) { keys_.insert(SpanKey(span)); }
  bool contains(const SpanKey& key) const { return keys_.count(key) > 0; }
  bool contains(const FunctionSpan& span) const { return contains(SpanKey(span)); }
  size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::set<SpanKey>& keys() const { return keys_; }
  void merge(const UsedSet& other) { keys_.insert(other.keys_.begin(), other.keys_.end()); }

 private:
  std::set<SpanKey> keys_;
};

// Raised when a source file cannot be tokenized or its bracket structure is
// broken. Callers treat the file as skipped and serve it unmodified.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Implementation bug guard: probe insertion would have changed line numbering.
class InstrumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The used set names a span the scanner never produced, or a used span is
// nested inside an eliminated one.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two elimination runs cover different file sets.
class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace muzeel::js
