#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "muzeel/report/pipeline.hpp"

namespace muzeel::report {

class EmptyInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Distribution {
  double min = 0;
  double max = 0;
  double median = 0;
  std::vector<size_t> bins;               // histogram counts
  std::vector<std::pair<double, double>> cdf;  // (value, cumulative fraction)
};

// Histogram over |bin_count| equal-width bins plus the empirical CDF.
// Throws EmptyInput for an empty sample.
Distribution distribution(std::vector<double> values, int bin_count = 100);

// Cross-page summary: per-file and per-page distributions of eliminated
// function counts, removed bytes, and durations, as structured text.
std::string aggregate_json(const std::vector<EliminationReport>& reports, int bin_count = 100);

}  // namespace muzeel::report
