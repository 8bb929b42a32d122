#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faasbench/workload.hpp"

namespace faasbench {

// Sorted-sample median: odd n takes the middle value, even n the mean of the
// two middle values.
double median(std::vector<double> values);

// Q3 - Q1 with linear interpolation between order statistics (h = (n-1)p).
double iqr(std::vector<double> values);

double quantile(const std::vector<double>& sorted_values, double p);

// Successful completions bucketed by whole second, contiguous from second 0.
// duration_ms extends the series when completions stop early; 0 means
// record-driven length. No successes yields an empty series.
std::vector<int64_t> throughput_series(const std::vector<RequestRecord>& records,
                                       double duration_ms);

// Mean over the middle 60% of the series.
double steady_state_rps(const std::vector<int64_t>& series);

struct SummaryStats {
  double median_ms = 0.0;
  double iqr_ms = 0.0;
  int64_t count = 0;
  int64_t success_count = 0;
  std::vector<int64_t> series;
};

SummaryStats summarize(const std::vector<RequestRecord>& records,
                       double duration_ms);

// One table cell, `<median> - <iqr>` with one decimal each.
std::string render_cell(double median_ms, double iqr_ms);

// Rows carry a label plus one optional (median, iqr) per scenario column in
// the fixed order loc, cld, ewst, etyp, eopt. Missing cells render as n/a.
using TableRow =
    std::pair<std::string,
              std::array<std::optional<std::pair<double, double>>, 5>>;
std::string render_table(const std::vector<TableRow>& rows);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

std::string records_to_csv(std::vector<RequestRecord> records);
void export_records(const std::vector<RequestRecord>& records,
                    const std::string& path);
std::vector<RequestRecord> parse_records_csv(const std::string& path);

// One newline-terminated JSON object: test, scenario, profile, median_ms,
// iqr_ms, count, success_count, steady_rps.
std::string summary_json_line(const std::string& test,
                              const std::string& scenario,
                              const std::string& profile,
                              const SummaryStats& stats, double steady_rps);

}  // namespace faasbench
