#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "muzeel/bot/discovery.hpp"
#include "muzeel/cache/snapshot.hpp"

namespace muzeel::report {

struct FileStat {
  std::string file;  // unit name ("app.js", "index.html#inline:0")
  size_t total_functions = 0;
  size_t eliminated_functions = 0;
  size_t original_bytes = 0;
  size_t removed_bytes = 0;
};

struct EliminationReport {
  std::vector<FileStat> per_file;
  struct PageStat {
    size_t total_functions = 0;
    size_t eliminated_functions = 0;
    size_t removed_bytes = 0;
    size_t original_js_bytes = 0;
    double js_bytes_fraction_removed = 0.0;
    std::int64_t duration_ms = 0;
    std::map<std::string, std::int64_t> stage_durations_ms;
  } per_page;
  std::vector<std::pair<std::string, std::string>> skipped_files;  // unit, reason

  std::string to_json() const;
  static EliminationReport from_json(const std::string& text);

  // Equality that ignores wall-clock fields; reruns on an unchanged snapshot
  // must match under this comparison.
  bool same_outcome(const EliminationReport& other) const;
};

struct PipelineConfig {
  std::string probe_token = std::string(js::kDefaultProbeToken);
  bot::BotConfig bot;
  std::string backend = "sim";   // "sim" or "cdp"
  std::string sim_script_path;   // defaults to <snapshot>/sim_page.json
  std::string cdp_endpoint;      // http://host:port of the DevTools listing
  std::vector<std::string> first_party_domains;
};

// Stage 1: scan every eligible unit, write the spans sidecar, and store the
// instrumented variant. Unparseable units fail open: recorded and served
// unmodified.
void instrument_snapshot(cache::Snapshot& snapshot, const std::string& probe_token,
                         std::vector<std::pair<std::string, std::string>>* skipped = nullptr);

// Stage 2: drive the instrumented page (sim or real browser backend),
// persist used.json and tree.json, and return the discovery result.
bot::DiscoveryResult discover_snapshot(cache::Snapshot& snapshot, const PipelineConfig& config);

// Stage 3: eliminate unused bodies over the original sources, promote the
// muzeeled variant, and return per-unit stats.
std::vector<FileStat> eliminate_snapshot(
    cache::Snapshot& snapshot, const js::UsedSet& used,
    std::vector<std::pair<std::string, std::string>>* skipped = nullptr);

// All stages over an existing snapshot directory; writes meta/report.json.
EliminationReport run_pipeline(const std::filesystem::path& snapshot_dir,
                               const PipelineConfig& config);

// Byte-level identical-file fraction between two snapshots' muzeeled
// variants (same unit set required).
double diff_snapshots(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b);

}  // namespace muzeel::report
