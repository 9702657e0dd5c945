#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "muzeel/cache/snapshot.hpp"
#include "muzeel/driver/sim_page.hpp"
#include "muzeel/js/span.hpp"

namespace muzeel::test {

// A synthetic page whose JavaScript, HTML and simulated-interaction script
// agree: handler logs name real function spans of the generated sources, so
// the full pipeline can run against it with known ground truth.
struct BuiltPage {
  std::string origin_url;
  std::string html;                            // index.html, references the js files
  std::map<std::string, std::string> js;       // path ("app0.js") -> source
  driver::SimPageScript sim;
  std::set<js::SpanKey> live;                  // spans reached by load or events
  std::set<js::SpanKey> dead;
  size_t total_functions = 0;
};

// Every file holds |functions_per_file| three-line functions;
// |live_per_file| of them are reachable (the first via a load handler, the
// rest via one button click each). Counts are exact, so a 70%-dead corpus is
// functions_per_file=10, live_per_file=3.
BuiltPage build_page(std::uint32_t seed, int files, int functions_per_file, int live_per_file);

// Materializes the page as a snapshot directory (manifest, blobs,
// sim_page.json) ready for the pipeline.
cache::Snapshot materialize_snapshot(const BuiltPage& page, const std::filesystem::path& dir);

}  // namespace muzeel::test
