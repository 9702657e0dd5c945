#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "muzeel/js/span.hpp"

namespace muzeel::js {

// Log-marker prefix prepended to every probe payload. High-entropy so page
// native logging cannot collide; overridable everywhere it is consumed.
inline constexpr std::string_view kDefaultProbeToken = "MZLPRB.e41c9d7f::";

// "<token><file>|<start>|<end>" — the string a probe logs when its function
// runs.
std::string probe_payload(const SpanKey& key, std::string_view probe_token = kDefaultProbeToken);

// The payload as a JavaScript string literal (quotes and backslashes in the
// file name escaped).
std::string probe_string_literal(const SpanKey& key, std::string_view probe_token);

// Parses one console line. Returns the span identity for a well-formed probe
// message, nothing for ordinary page output.
std::optional<SpanKey> parse_probe_log(std::string_view console_line,
                                       std::string_view probe_token = kDefaultProbeToken);

// Stateful wrapper that tallies token-prefixed lines with a malformed payload
// (a diagnostics signal; non-probe lines are not counted).
class ProbeLogParser {
 public:
  explicit ProbeLogParser(std::string probe_token = std::string(kDefaultProbeToken))
      : token_(std::move(probe_token)) {}

  std::optional<SpanKey> parse(std::string_view console_line);
  size_t malformed_count() const { return malformed_; }
  const std::string& token() const { return token_; }

 private:
  std::string token_;
  size_t malformed_ = 0;
};

}  // namespace muzeel::js
