#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "muzeel/js/span.hpp"

namespace muzeel::js {

struct EliminationResult {
  std::string text;

  // One entry per span whose header survives in the output, in source order.
  struct Entry {
    FunctionSpan original;
    FunctionSpan rewritten;  // recomputed position in the output
    bool eliminated = false; // body replaced with {}
  };
  std::vector<Entry> entries;

  // Spans wiped out entirely because they were nested inside an eliminated
  // body.
  std::vector<FunctionSpan> removed_nested;

  size_t bytes_removed = 0;

  size_t eliminated_count() const {
    size_t n = removed_nested.size();
    for (const auto& e : entries) n += e.eliminated ? 1 : 0;
    return n;
  }
};

// Replaces the body of every span not in |used| with an empty block, keeping
// header, name and parameter list. Spans nested inside an eliminated body are
// removed with it. |spans| must be the scan_functions output for this source;
// |used| must be a subset of it, and no used span may sit inside an
// eliminated one (ConsistencyError in all three cases).
EliminationResult eliminate(std::string_view original_source,
                            const std::vector<FunctionSpan>& spans, const UsedSet& used,
                            const std::string& file_name);

// Fraction of files whose bytes are identical across two elimination runs
// over the same file set. Throws MismatchError when the file sets differ or
// are empty.
double diff_eliminated(const std::map<std::string, std::string>& run_a,
                       const std::map<std::string, std::string>& run_b);

}  // namespace muzeel::js
