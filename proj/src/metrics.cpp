#include "faasbench/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "faasbench/errors.hpp"

namespace faasbench {

double quantile(const std::vector<double>& sorted_values, double p) {
  if (sorted_values.empty()) throw InputError("quantile of empty list");
  size_t n = sorted_values.size();
  if (n == 1) return sorted_values[0];
  double h = static_cast<double>(n - 1) * p;
  size_t lo = static_cast<size_t>(h);
  if (lo >= n - 1) return sorted_values[n - 1];
  double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of empty list");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double iqr(std::vector<double> values) {
  if (values.empty()) throw InputError("iqr of empty list");
  std::sort(values.begin(), values.end());
  return quantile(values, 0.75) - quantile(values, 0.25);
}

std::vector<int64_t> throughput_series(
    const std::vector<RequestRecord>& records, double duration_ms) {
  int64_t max_bucket = -1;
  for (const auto& r : records) {
    if (!r.success) continue;
    int64_t bucket = static_cast<int64_t>((r.start_ms + r.elapsed_ms) / 1000.0);
    max_bucket = std::max(max_bucket, bucket);
  }
  if (max_bucket < 0) return {};
  int64_t len = max_bucket + 1;
  if (duration_ms > 0)
    len = std::max(len, static_cast<int64_t>(std::ceil(duration_ms / 1000.0)));
  std::vector<int64_t> series(static_cast<size_t>(len), 0);
  for (const auto& r : records) {
    if (!r.success) continue;
    auto bucket = static_cast<size_t>((r.start_ms + r.elapsed_ms) / 1000.0);
    ++series[bucket];
  }
  return series;
}

double steady_state_rps(const std::vector<int64_t>& series) {
  if (series.empty()) return 0.0;
  size_t n = series.size();
  size_t lo = static_cast<size_t>(std::floor(0.2 * static_cast<double>(n)));
  size_t hi = static_cast<size_t>(std::ceil(0.8 * static_cast<double>(n)));
  if (hi <= lo) {
    lo = 0;
    hi = n;
  }
  double sum = 0.0;
  for (size_t i = lo; i < hi; ++i) sum += static_cast<double>(series[i]);
  return sum / static_cast<double>(hi - lo);
}

SummaryStats summarize(const std::vector<RequestRecord>& records,
                       double duration_ms) {
  SummaryStats s;
  s.count = static_cast<int64_t>(records.size());
  std::vector<double> elapsed;
  elapsed.reserve(records.size());
  for (const auto& r : records) {
    elapsed.push_back(r.elapsed_ms);
    if (r.success) ++s.success_count;
  }
  if (!elapsed.empty()) {
    s.median_ms = median(elapsed);
    s.iqr_ms = iqr(std::move(elapsed));
  }
  s.series = throughput_series(records, duration_ms);
  return s;
}

std::string render_cell(double median_ms, double iqr_ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f - %.1f", median_ms, iqr_ms);
  return buf;
}

std::string render_table(const std::vector<TableRow>& rows) {
  static const char* kColumns[5] = {"loc", "cld", "ewst", "etyp", "eopt"};
  std::vector<std::array<std::string, 6>> grid;
  std::array<size_t, 6> width{};
  std::array<std::string, 6> header;
  header[0] = "";
  for (int c = 0; c < 5; ++c) header[c + 1] = kColumns[c];
  grid.push_back(header);
  for (const auto& [label, cells] : rows) {
    std::array<std::string, 6> row;
    row[0] = label;
    for (int c = 0; c < 5; ++c)
      row[c + 1] = cells[c] ? render_cell(cells[c]->first, cells[c]->second)
                            : std::string("n/a");
    grid.push_back(row);
  }
  for (const auto& row : grid)
    for (int c = 0; c < 6; ++c) width[c] = std::max(width[c], row[c].size());
  std::string out;
  for (const auto& row : grid) {
    for (int c = 0; c < 6; ++c) {
      std::string cell = row[c];
      cell.resize(width[c], ' ');
      out += cell;
      out += (c == 5) ? "" : "  ";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double_field(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("bad numeric field in CSV: " + s);
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

constexpr const char* kCsvHeader =
    "test,scenario,profile,thread,seq,start_ms,elapsed_ms,success,chain_len,"
    "chain_mode";

}  // namespace

std::string records_to_csv(std::vector<RequestRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const RequestRecord& a, const RequestRecord& b) {
              if (a.thread != b.thread) return a.thread < b.thread;
              return a.seq < b.seq;
            });
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.test_id;
    out += ',';
    out += r.scenario;
    out += ',';
    out += r.profile;
    out += ',';
    out += std::to_string(r.thread);
    out += ',';
    out += std::to_string(r.seq);
    out += ',';
    out += format_double(r.start_ms);
    out += ',';
    out += format_double(r.elapsed_ms);
    out += ',';
    out += r.success ? '1' : '0';
    out += ',';
    out += std::to_string(r.chain_len);
    out += ',';
    out += r.chain_mode;
    out += '\n';
  }
  return out;
}

void export_records(const std::vector<RequestRecord>& records,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << records_to_csv(records);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<RequestRecord> parse_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV: " + path);
  if (line != kCsvHeader) throw InputError("unexpected CSV header in " + path);
  std::vector<RequestRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 10) throw InputError("bad CSV row in " + path);
    RequestRecord r;
    r.test_id = f[0];
    r.scenario = f[1];
    r.profile = f[2];
    r.thread = static_cast<int>(std::stol(f[3]));
    r.seq = std::stoll(f[4]);
    r.start_ms = parse_double_field(f[5]);
    r.elapsed_ms = parse_double_field(f[6]);
    r.success = f[7] == "1";
    r.chain_len = static_cast<int>(std::stol(f[8]));
    r.chain_mode = f[9];
    records.push_back(std::move(r));
  }
  return records;
}

std::string summary_json_line(const std::string& test,
                              const std::string& scenario,
                              const std::string& profile,
                              const SummaryStats& stats, double steady_rps) {
  nlohmann::ordered_json j;
  j["test"] = test;
  j["scenario"] = scenario;
  j["profile"] = profile;
  j["median_ms"] = stats.median_ms;
  j["iqr_ms"] = stats.iqr_ms;
  j["count"] = stats.count;
  j["success_count"] = stats.success_count;
  j["steady_rps"] = steady_rps;
  return j.dump() + "\n";
}

}  // namespace faasbench
