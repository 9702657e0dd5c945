#include "muzeel/report/pipeline.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "muzeel/cache/units.hpp"
#include "muzeel/driver/cdp.hpp"
#include "muzeel/driver/sim_page.hpp"
#include "muzeel/events/event.hpp"
#include "muzeel/js/eliminate.hpp"
#include "muzeel/js/instrument.hpp"
#include "muzeel/js/scanner.hpp"

namespace muzeel::report {

using nlohmann::json;

std::string EliminationReport::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["per_file"] = json::array();
  for (const auto& f : per_file) {
    j["per_file"].push_back({{"file", f.file},
                             {"total_functions", f.total_functions},
                             {"eliminated_functions", f.eliminated_functions},
                             {"original_bytes", f.original_bytes},
                             {"removed_bytes", f.removed_bytes}});
  }
  j["per_page"] = {{"total_functions", per_page.total_functions},
                   {"eliminated_functions", per_page.eliminated_functions},
                   {"removed_bytes", per_page.removed_bytes},
                   {"original_js_bytes", per_page.original_js_bytes},
                   {"js_bytes_fraction_removed", per_page.js_bytes_fraction_removed},
                   {"duration_ms", per_page.duration_ms}};
  j["per_page"]["stage_durations_ms"] = per_page.stage_durations_ms;
  j["skipped_files"] = json::array();
  for (const auto& [file, reason] : skipped_files) {
    j["skipped_files"].push_back({{"file", file}, {"reason", reason}});
  }
  return j.dump(1) + "\n";
}

EliminationReport EliminationReport::from_json(const std::string& text) {
  json j = json::parse(text);
  EliminationReport r;
  for (const auto& f : j.value("per_file", json::array())) {
    r.per_file.push_back({f.at("file").get<std::string>(),
                          f.at("total_functions").get<size_t>(),
                          f.at("eliminated_functions").get<size_t>(),
                          f.at("original_bytes").get<size_t>(),
                          f.at("removed_bytes").get<size_t>()});
  }
  const auto& p = j.at("per_page");
  r.per_page.total_functions = p.at("total_functions").get<size_t>();
  r.per_page.eliminated_functions = p.at("eliminated_functions").get<size_t>();
  r.per_page.removed_bytes = p.at("removed_bytes").get<size_t>();
  r.per_page.original_js_bytes = p.value("original_js_bytes", size_t{0});
  r.per_page.js_bytes_fraction_removed = p.value("js_bytes_fraction_removed", 0.0);
  r.per_page.duration_ms = p.value("duration_ms", std::int64_t{0});
  for (const auto& s : j.value("skipped_files", json::array())) {
    r.skipped_files.emplace_back(s.at("file").get<std::string>(),
                                 s.at("reason").get<std::string>());
  }
  return r;
}

bool EliminationReport::same_outcome(const EliminationReport& other) const {
  if (per_file.size() != other.per_file.size()) return false;
  for (size_t i = 0; i < per_file.size(); ++i) {
    const auto& a = per_file[i];
    const auto& b = other.per_file[i];
    if (a.file != b.file || a.total_functions != b.total_functions ||
        a.eliminated_functions != b.eliminated_functions ||
        a.original_bytes != b.original_bytes || a.removed_bytes != b.removed_bytes) {
      return false;
    }
  }
  return per_page.total_functions == other.per_page.total_functions &&
         per_page.eliminated_functions == other.per_page.eliminated_functions &&
         per_page.removed_bytes == other.per_page.removed_bytes &&
         skipped_files == other.skipped_files;
}

void instrument_snapshot(cache::Snapshot& snapshot, const std::string& probe_token,
                         std::vector<std::pair<std::string, std::string>>* skipped) {
  std::map<std::string, std::vector<js::FunctionSpan>> sidecar;
  for (auto& entry : snapshot.entries()) {
    if (!entry.eligible) continue;
    std::string body = snapshot.load_blob(entry.body_original);
    auto units = cache::extract_units(entry, body);
    if (units.empty()) continue;
    std::vector<std::string> rewritten;
    bool any_instrumented = false;
    for (const auto& unit : units) {
      try {
        auto spans = js::scan_functions(unit.text, unit.file_name);
        auto instrumented = js::instrument(unit.text, spans, unit.file_name, probe_token);
        sidecar[unit.file_name] = spans;
        rewritten.push_back(instrumented.text);
        any_instrumented = true;
      } catch (const js::ParseError& e) {
        // Fail open: serve this unit untouched.
        if (skipped) skipped->emplace_back(unit.file_name, std::string("parse_error: ") + e.what());
        rewritten.push_back(unit.text);
      }
    }
    if (any_instrumented) {
      entry.body_instrumented =
          snapshot.put_blob(cache::splice_units(body, units, rewritten));
    }
  }
  snapshot.save_spans(sidecar);
  snapshot.save();
}

namespace {

std::unique_ptr<driver::PageSession> open_session(cache::Snapshot& snapshot,
                                                  const PipelineConfig& config) {
  if (config.backend == "sim") {
    auto path = config.sim_script_path.empty()
                    ? snapshot.dir() / "sim_page.json"
                    : std::filesystem::path(config.sim_script_path);
    std::ifstream in(path);
    if (!in) {
      throw cache::SnapshotError("sim backend needs a page script at " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return driver::sim_load(driver::SimPageScript::from_json(text), config.probe_token);
  }
  if (config.backend == "cdp") {
    return driver::cdp_load(snapshot.origin_url(), config.cdp_endpoint);
  }
  throw cache::SnapshotError("unknown backend '" + config.backend + "'");
}

}  // namespace

bot::DiscoveryResult discover_snapshot(cache::Snapshot& snapshot, const PipelineConfig& config) {
  auto session = open_session(snapshot, config);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& rec : session->listener_dump()) pairs.push_back({rec.xpath, rec.type});
  auto events = events::events_from_listeners(pairs);

  bot::BotConfig bot_config = config.bot;
  bot_config.probe_token = config.probe_token;
  auto result = bot::discover(*session, events, bot_config);

  snapshot.save_used(result.used);
  std::ofstream tree(snapshot.meta_path("tree.json"));
  tree << events::serialize_tree(result.tree);
  return result;
}

std::vector<FileStat> eliminate_snapshot(
    cache::Snapshot& snapshot, const js::UsedSet& used,
    std::vector<std::pair<std::string, std::string>>* skipped) {
  std::vector<FileStat> stats;
  std::map<std::string, std::string> promoted;

  for (auto& entry : snapshot.entries()) {
    if (!entry.eligible) continue;
    std::string body = snapshot.load_blob(entry.body_original);
    auto units = cache::extract_units(entry, body);
    if (units.empty()) continue;
    std::vector<std::string> rewritten;
    bool any_rewritten = false;
    for (const auto& unit : units) {
      std::vector<js::FunctionSpan> spans;
      try {
        spans = js::scan_functions(unit.text, unit.file_name);
      } catch (const js::ParseError& e) {
        if (skipped) skipped->emplace_back(unit.file_name, std::string("parse_error: ") + e.what());
        rewritten.push_back(unit.text);
        continue;
      }
      js::UsedSet unit_used;
      for (const auto& key : used.keys()) {
        if (key.file_name == unit.file_name) unit_used.insert(key);
      }
      auto result = js::eliminate(unit.text, spans, unit_used, unit.file_name);
      rewritten.push_back(result.text);
      any_rewritten = true;
      FileStat stat;
      stat.file = unit.file_name;
      stat.total_functions = spans.size();
      stat.eliminated_functions = result.eliminated_count();
      stat.original_bytes = unit.text.size();
      stat.removed_bytes = result.bytes_removed;
      stats.push_back(stat);
    }
    if (any_rewritten) {
      promoted[entry.url] = cache::splice_units(body, units, rewritten);
    }
  }
  cache::promote(snapshot, promoted);
  return stats;
}

EliminationReport run_pipeline(const std::filesystem::path& snapshot_dir,
                               const PipelineConfig& config) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - from).count();
  };

  auto pipeline_start = clock::now();
  EliminationReport report;
  cache::Snapshot snapshot = cache::Snapshot::open(snapshot_dir);

  auto t = clock::now();
  instrument_snapshot(snapshot, config.probe_token, &report.skipped_files);
  report.per_page.stage_durations_ms["instrument"] = ms_since(t);

  t = clock::now();
  auto discovery = discover_snapshot(snapshot, config);
  report.per_page.stage_durations_ms["discover"] = ms_since(t);

  t = clock::now();
  report.per_file = eliminate_snapshot(snapshot, discovery.used, &report.skipped_files);
  report.per_page.stage_durations_ms["eliminate"] = ms_since(t);

  for (const auto& f : report.per_file) {
    report.per_page.total_functions += f.total_functions;
    report.per_page.eliminated_functions += f.eliminated_functions;
    report.per_page.removed_bytes += f.removed_bytes;
    report.per_page.original_js_bytes += f.original_bytes;
  }
  report.per_page.js_bytes_fraction_removed =
      report.per_page.original_js_bytes == 0
          ? 0.0
          : static_cast<double>(report.per_page.removed_bytes) /
                static_cast<double>(report.per_page.original_js_bytes);
  report.per_page.duration_ms = ms_since(pipeline_start);

  std::ofstream out(snapshot.meta_path("report.json"));
  out << report.to_json();
  return report;
}

double diff_snapshots(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b) {
  auto collect = [](const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    cache::Snapshot snapshot = cache::Snapshot::open(dir);
    for (const auto& entry : snapshot.entries()) {
      if (!entry.eligible || entry.body_muzeeled.empty()) continue;
      files[entry.local_path] = snapshot.load_blob(entry.body_muzeeled);
    }
    return files;
  };
  return js::diff_eliminated(collect(dir_a), collect(dir_b));
}

}  // namespace muzeel::report
