#include "muzeel/js/probe.hpp"

#include <charconv>

namespace muzeel::js {

std::string probe_payload(const SpanKey& key, std::string_view probe_token) {
  std::string out(probe_token);
  out += key.file_name;
  out += '|';
  out += std::to_string(key.start_line);
  out += '|';
  out += std::to_string(key.end_line);
  return out;
}

std::string probe_string_literal(const SpanKey& key, std::string_view probe_token) {
  std::string payload = probe_payload(key, probe_token);
  std::string lit = "\"";
  for (char c : payload) {
    switch (c) {
      case '"': lit += "\\\""; break;
      case '\\': lit += "\\\\"; break;
      case '\n': lit += "\\n"; break;
      case '\r': lit += "\\r"; break;
      default: lit += c;
    }
  }
  lit += '"';
  return lit;
}

namespace {

std::optional<int> parse_positive_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (value <= 0) return std::nullopt;
  return value;
}

}  // namespace

std::optional<SpanKey> parse_probe_log(std::string_view console_line,
                                       std::string_view probe_token) {
  if (console_line.substr(0, probe_token.size()) != probe_token) return std::nullopt;
  std::string_view payload = console_line.substr(probe_token.size());
  size_t p2 = payload.rfind('|');
  if (p2 == std::string_view::npos || p2 == 0) return std::nullopt;
  size_t p1 = payload.rfind('|', p2 - 1);
  if (p1 == std::string_view::npos || p1 == 0) return std::nullopt;
  auto start = parse_positive_int(payload.substr(p1 + 1, p2 - p1 - 1));
  auto end = parse_positive_int(payload.substr(p2 + 1));
  if (!start || !end || *start > *end) return std::nullopt;
  return SpanKey(std::string(payload.substr(0, p1)), *start, *end);
}

std::optional<SpanKey> ProbeLogParser::parse(std::string_view console_line) {
  if (console_line.substr(0, token_.size()) != token_) return std::nullopt;
  auto key = parse_probe_log(console_line, token_);
  if (!key) ++malformed_;
  return key;
}

}  // namespace muzeel::js
