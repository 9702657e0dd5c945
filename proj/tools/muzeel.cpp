// Command-line front end for the dead-code elimination pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "muzeel/cache/capture.hpp"
#include "muzeel/cache/server.hpp"
#include "muzeel/report/aggregate.hpp"
#include "muzeel/report/pipeline.hpp"

namespace {

using muzeel::report::EliminationReport;
using muzeel::report::PipelineConfig;

struct GlobalOptions {
  std::string config_path;
  PipelineConfig pipeline;
  std::vector<std::string> first_party;
};

void apply_config_file(GlobalOptions& options) {
  if (options.config_path.empty()) return;
  std::ifstream in(options.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + options.config_path);
  nlohmann::json j = nlohmann::json::parse(in);
  auto& p = options.pipeline;
  p.probe_token = j.value("probe_token", p.probe_token);
  p.backend = j.value("backend", p.backend);
  p.sim_script_path = j.value("sim_script", p.sim_script_path);
  p.cdp_endpoint = j.value("endpoint", p.cdp_endpoint);
  p.bot.trigger_budget = j.value("budget", p.bot.trigger_budget);
  p.bot.settle_ms = j.value("settle_ms", p.bot.settle_ms);
  p.bot.key_payload = j.value("key_payload", p.bot.key_payload);
  options.first_party = j.value("first_party", options.first_party);
}

void print_report(const EliminationReport& report) {
  std::cout << report.to_json();
  std::cerr << "eliminated " << report.per_page.eliminated_functions << "/"
            << report.per_page.total_functions << " functions, "
            << report.per_page.removed_bytes << " bytes removed";
  if (!report.skipped_files.empty()) {
    std::cerr << ", " << report.skipped_files.size() << " unit(s) skipped";
  }
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dead-function elimination for captured web pages"};
  app.require_subcommand(1);

  GlobalOptions options;
  std::string flag_probe_token, flag_backend, flag_sim_script, flag_endpoint;
  int flag_budget = 0, flag_settle = 0;
  app.add_option("--config", options.config_path, "JSON config file; flags override it");
  auto* opt_probe = app.add_option("--probe-token", flag_probe_token,
                                   "console log marker prefix");
  auto* opt_backend = app.add_option("--backend", flag_backend, "discovery backend: sim | cdp");
  auto* opt_sim = app.add_option("--sim-script", flag_sim_script,
                                 "simulated page script (default <snapshot>/sim_page.json)");
  auto* opt_endpoint = app.add_option("--endpoint", flag_endpoint,
                                      "DevTools HTTP endpoint, e.g. http://127.0.0.1:9222");
  auto* opt_budget = app.add_option("--budget", flag_budget, "max trigger attempts");
  auto* opt_settle = app.add_option("--settle-ms", flag_settle,
                                    "quiescence wait after each trigger");

  // capture
  std::string capture_url, capture_out;
  auto* cmd_capture = app.add_subcommand("capture", "record a page and its resources");
  cmd_capture->add_option("url", capture_url)->required();
  cmd_capture->add_option("--out", capture_out, "snapshot directory")->required();
  cmd_capture->add_option("--first-party", options.first_party,
                          "extra first-party domains")->delimiter(',');

  // instrument
  std::string snap_dir;
  auto* cmd_instrument = app.add_subcommand("instrument", "inject probes into snapshot JS");
  cmd_instrument->add_option("snapshot", snap_dir)->required();

  // discover
  auto* cmd_discover = app.add_subcommand("discover", "drive the page and collect used functions");
  cmd_discover->add_option("snapshot", snap_dir)->required();

  // eliminate
  auto* cmd_eliminate = app.add_subcommand("eliminate", "rewrite files from the used set");
  cmd_eliminate->add_option("snapshot", snap_dir)->required();

  // run
  std::vector<std::string> run_inputs;
  int workers = 1;
  auto* cmd_run = app.add_subcommand("run", "all stages over one or more snapshots");
  cmd_run->add_option("snapshots", run_inputs, "snapshot directories")->required();
  cmd_run->add_option("--workers", workers, "page-level parallelism");

  // serve
  std::string variant_name = "original";
  int port = 0;
  auto* cmd_serve = app.add_subcommand("serve", "serve a snapshot over local HTTP");
  cmd_serve->add_option("snapshot", snap_dir)->required();
  cmd_serve->add_option("--variant", variant_name, "original | instrumented | muzeeled");
  cmd_serve->add_option("--port", port, "port (0 = pick one)");

  // report
  std::vector<std::string> report_files;
  int bins = 100;
  auto* cmd_report = app.add_subcommand("report", "aggregate report files into distributions");
  cmd_report->add_option("reports", report_files, "report.json files")->required();
  cmd_report->add_option("--bins", bins, "histogram bin count");

  // diff
  std::vector<std::string> diff_dirs;
  auto* cmd_diff = app.add_subcommand("diff", "identical-file fraction of two muzeeled snapshots");
  cmd_diff->add_option("snapshots", diff_dirs, "two snapshot directories")
      ->expected(2)
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    apply_config_file(options);
    if (opt_probe->count()) options.pipeline.probe_token = flag_probe_token;
    if (opt_backend->count()) options.pipeline.backend = flag_backend;
    if (opt_sim->count()) options.pipeline.sim_script_path = flag_sim_script;
    if (opt_endpoint->count()) options.pipeline.cdp_endpoint = flag_endpoint;
    if (opt_budget->count()) options.pipeline.bot.trigger_budget = flag_budget;
    if (opt_settle->count()) options.pipeline.bot.settle_ms = flag_settle;

    if (*cmd_capture) {
      auto fetcher = muzeel::cache::make_http_fetcher();
      muzeel::cache::CaptureOptions capture_options;
      capture_options.first_party_domains = options.first_party;
      muzeel::cache::CaptureReport capture_report;
      auto snapshot = muzeel::cache::capture(capture_url, *fetcher, capture_out,
                                             capture_options, &capture_report);
      std::cerr << "captured " << snapshot.entries().size() << " resource(s) to "
                << capture_out << "\n";
      for (const auto& [url, error] : capture_report.failures) {
        std::cerr << "  fetch failed: " << url << " (" << error << ")\n";
      }
      return 0;
    }
    if (*cmd_instrument) {
      auto snapshot = muzeel::cache::Snapshot::open(snap_dir);
      std::vector<std::pair<std::string, std::string>> skipped;
      muzeel::report::instrument_snapshot(snapshot, options.pipeline.probe_token, &skipped);
      std::cerr << "instrumented; " << skipped.size() << " unit(s) skipped\n";
      for (const auto& [file, reason] : skipped) {
        std::cerr << "  " << file << ": " << reason << "\n";
      }
      return 0;
    }
    if (*cmd_discover) {
      auto snapshot = muzeel::cache::Snapshot::open(snap_dir);
      auto result = muzeel::report::discover_snapshot(snapshot, options.pipeline);
      std::cerr << "discovered " << result.tree.size() - 1 << " event(s), "
                << result.tree.orphans().size() << " orphan(s), " << result.used.size()
                << " used function(s)\n";
      return 0;
    }
    if (*cmd_eliminate) {
      auto snapshot = muzeel::cache::Snapshot::open(snap_dir);
      auto used = snapshot.load_used();
      std::vector<std::pair<std::string, std::string>> skipped;
      auto stats = muzeel::report::eliminate_snapshot(snapshot, used, &skipped);
      size_t removed = 0;
      for (const auto& s : stats) removed += s.removed_bytes;
      std::cerr << "eliminated across " << stats.size() << " unit(s), " << removed
                << " bytes removed\n";
      return 0;
    }
    if (*cmd_run) {
      std::vector<EliminationReport> reports(run_inputs.size());
      std::vector<int> codes(run_inputs.size(), 0);
      std::atomic<size_t> next{0};
      auto worker = [&] {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= run_inputs.size()) return;
          try {
            reports[i] = muzeel::report::run_pipeline(run_inputs[i], options.pipeline);
          } catch (const std::exception& e) {
            std::cerr << run_inputs[i] << ": " << e.what() << "\n";
            codes[i] = 1;
          }
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < std::max(1, workers); ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      int exit_code = 0;
      for (size_t i = 0; i < run_inputs.size(); ++i) {
        if (codes[i]) {
          exit_code = 1;
          continue;
        }
        std::cerr << run_inputs[i] << ":\n";
        print_report(reports[i]);
        // Nonzero only when nothing at all was processable for a page.
        if (reports[i].per_file.empty() && !reports[i].skipped_files.empty()) exit_code = 1;
      }
      return exit_code;
    }
    if (*cmd_serve) {
      auto variant = muzeel::cache::variant_from_string(variant_name);
      if (!variant) throw CLI::ValidationError("--variant", "unknown variant " + variant_name);
      muzeel::cache::EdgeServer server(muzeel::cache::Snapshot::open(snap_dir), *variant);
      int bound = server.start(port);
      std::cerr << "serving " << snap_dir << " (" << variant_name << ") on http://127.0.0.1:"
                << bound << " — Ctrl-C to stop\n";
      // Serve until interrupted.
      while (true) std::this_thread::sleep_for(std::chrono::seconds(3600));
    }
    if (*cmd_report) {
      std::vector<EliminationReport> reports;
      for (const auto& path : report_files) {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("reports", "cannot open " + path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        reports.push_back(EliminationReport::from_json(text));
      }
      std::cout << muzeel::report::aggregate_json(reports, bins);
      return 0;
    }
    if (*cmd_diff) {
      double ratio = muzeel::report::diff_snapshots(diff_dirs[0], diff_dirs[1]);
      std::cout << ratio << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
