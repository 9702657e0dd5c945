#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "muzeel/js/probe.hpp"
#include "muzeel/js/span.hpp"

namespace muzeel::js {

struct InstrumentedSource {
  std::string file_name;
  std::string text;
  std::vector<FunctionSpan> spans;  // unchanged from the input
  std::string probe_token;
};

// Injects a probe into every function: block bodies gain a console call right
// after the opening brace on the same line; expression-bodied arrows are
// rewritten to `{void console.log(...);return <expr>;}`. Line count is
// preserved; stripping restores the original byte-for-byte.
//
// |spans| must be the scan_functions output for this exact source
// (ConsistencyError otherwise). Throws InstrumentError if an insertion would
// have changed line numbering.
InstrumentedSource instrument(std::string_view source, const std::vector<FunctionSpan>& spans,
                              const std::string& file_name,
                              std::string_view probe_token = kDefaultProbeToken);

// Inverse of instrument: removes every probe, returning the original bytes.
std::string strip_probes(std::string_view instrumented_text, std::string_view probe_token);

}  // namespace muzeel::js
