#include "muzeel/report/aggregate.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace muzeel::report {

using nlohmann::json;

Distribution distribution(std::vector<double> values, int bin_count) {
  if (values.empty()) throw EmptyInput("no values to aggregate");
  std::sort(values.begin(), values.end());
  Distribution d;
  d.min = values.front();
  d.max = values.back();
  size_t mid = values.size() / 2;
  d.median = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
  d.bins.assign(static_cast<size_t>(bin_count), 0);
  double width = (d.max - d.min) / bin_count;
  for (double v : values) {
    size_t bin = width == 0 ? 0
                            : std::min<size_t>(static_cast<size_t>((v - d.min) / width),
                                               d.bins.size() - 1);
    ++d.bins[bin];
  }
  size_t n = values.size();
  for (size_t i = 0; i < n; ++i) {
    d.cdf.emplace_back(values[i], static_cast<double>(i + 1) / static_cast<double>(n));
  }
  return d;
}

namespace {

json to_json(const Distribution& d) {
  json j;
  j["min"] = d.min;
  j["max"] = d.max;
  j["median"] = d.median;
  j["bins"] = d.bins;
  j["cdf"] = json::array();
  for (const auto& [v, p] : d.cdf) j["cdf"].push_back({v, p});
  return j;
}

}  // namespace

std::string aggregate_json(const std::vector<EliminationReport>& reports, int bin_count) {
  if (reports.empty()) throw EmptyInput("no reports to aggregate");

  std::vector<double> file_eliminated, file_removed_bytes;
  std::vector<double> page_eliminated, page_removed_bytes, page_durations;
  for (const auto& r : reports) {
    for (const auto& f : r.per_file) {
      file_eliminated.push_back(static_cast<double>(f.eliminated_functions));
      file_removed_bytes.push_back(static_cast<double>(f.removed_bytes));
    }
    page_eliminated.push_back(static_cast<double>(r.per_page.eliminated_functions));
    page_removed_bytes.push_back(static_cast<double>(r.per_page.removed_bytes));
    page_durations.push_back(static_cast<double>(r.per_page.duration_ms));
  }

  json j;
  j["schema_version"] = 1;
  j["pages"] = reports.size();
  if (!file_eliminated.empty()) {
    j["per_file"]["eliminated_functions"] = to_json(distribution(file_eliminated, bin_count));
    j["per_file"]["removed_bytes"] = to_json(distribution(file_removed_bytes, bin_count));
  }
  j["per_page"]["eliminated_functions"] = to_json(distribution(page_eliminated, bin_count));
  j["per_page"]["removed_bytes"] = to_json(distribution(page_removed_bytes, bin_count));
  j["per_page"]["duration_ms"] = to_json(distribution(page_durations, bin_count));
  return j.dump(1) + "\n";
}

}  // namespace muzeel::report
