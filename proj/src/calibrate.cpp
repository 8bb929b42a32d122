#include "faasbench/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "faasbench/errors.hpp"
#include "faasbench/metrics.hpp"
#include "faasbench/scenario.hpp"
#include "faasbench/service_model.hpp"

namespace faasbench {
namespace {

using nlohmann::json;

double cell_median(const json& cell, const std::string& where) {
  if (cell.is_number()) return cell.get<double>();
  if (cell.is_array() && !cell.empty() && cell[0].is_number())
    return cell[0].get<double>();
  throw ConfigError("reference cell " + where + " must be a number or [median, iqr]");
}

// Cell maps are keyed by scenario name; anything else is a typo worth failing on.
void check_scenario_keys(const json& cells) {
  for (auto it = cells.begin(); it != cells.end(); ++it) scenario_from_string(it.key());
}

std::string residual_line(const std::string& fn, const std::string& profile,
                          const std::string& point, double target, double fitted) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s %s %s: target=%.4f fitted=%.4f residual=%+.4f",
                fn.c_str(), profile.c_str(), point.c_str(), target, fitted,
                fitted - target);
  return buf;
}

struct LsFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least squares with both coefficients clamped to be non-negative; a service
// model with negative cost has no physical reading.
LsFit fit_line(const std::vector<std::pair<double, double>>& pts) {
  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  LsFit fit;
  fit.slope = std::max(0.0, (n * sxy - sx * sy) / denom);
  fit.intercept = std::max(0.0, (sy - fit.slope * sx) / n);
  return fit;
}

double parse_size_key(const std::string& key) {
  char* end = nullptr;
  double v = std::strtod(key.c_str(), &end);
  if (end != key.c_str() + key.size() || !(v >= 0))
    throw ConfigError("bad payload size key in reference: " + key);
  return v;
}

int parse_fib_key(const std::string& key) {
  char* end = nullptr;
  long v = std::strtol(key.c_str(), &end, 10);
  if (end != key.c_str() + key.size())
    throw ConfigError("bad fib n key in reference: " + key);
  return static_cast<int>(v);
}

}  // namespace

CalibrationResult calibrate_from_reference(const std::string& reference_json_path,
                                           const ModelConfig& model) {
  std::ifstream in(reference_json_path);
  if (!in) throw IoError("cannot open reference file: " + reference_json_path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("reference file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("reference file must hold a JSON object");

  const double floor = model.lan_rtt_ms;
  std::vector<std::string> missing;
  std::vector<std::string> lines;
  std::vector<std::string> residuals;

  auto emit = [&](FunctionName fn, NodeProfile p, const char* field, double value) {
    lines.push_back("service." + to_string(fn) + "." + to_string(p) + "." + field +
                    " = " + format_double(value));
  };

  auto fit_constant = [&](const char* section, FunctionName fn) {
    if (!root.contains(section)) return;
    const json& sec = root.at(section);
    if (!sec.is_object())
      throw ConfigError(std::string("reference section ") + section +
                        " must be an object");
    for (auto it = sec.begin(); it != sec.end(); ++it) {
      NodeProfile p = profile_from_string(it.key());
      const json& cells = it.value();
      if (!cells.is_object())
        throw ConfigError(std::string(section) + "." + it.key() +
                          " must map scenarios to cells");
      check_scenario_keys(cells);
      if (!cells.contains("loc")) {
        missing.push_back(std::string(section) + "." + it.key() + ".loc");
        continue;
      }
      double target = cell_median(cells.at("loc"),
                                  std::string(section) + "." + it.key() + ".loc");
      double base = std::max(0.0, target - floor);
      emit(fn, p, "base_ms", base);
      residuals.push_back(
          residual_line(to_string(fn), it.key(), "loc", target, base + floor));
    }
  };
  fit_constant("overhead", FunctionName::hello_world);
  fit_constant("intensive", FunctionName::img_classifier_hub);

  if (root.contains("payload")) {
    const json& sec = root.at("payload");
    if (!sec.is_object()) throw ConfigError("reference section payload must be an object");
    // profile name -> (payload kb, zero-WAN median)
    std::map<std::string, std::vector<std::pair<double, double>>> pts;
    for (auto s = sec.begin(); s != sec.end(); ++s) {
      double kb = parse_size_key(s.key());
      const json& profs = s.value();
      if (!profs.is_object())
        throw ConfigError("payload." + s.key() + " must map profiles to cells");
      for (auto it = profs.begin(); it != profs.end(); ++it) {
        profile_from_string(it.key());
        const json& cells = it.value();
        if (!cells.is_object())
          throw ConfigError("payload." + s.key() + "." + it.key() +
                            " must map scenarios to cells");
        check_scenario_keys(cells);
        if (!cells.contains("loc")) {
          missing.push_back("payload." + s.key() + "." + it.key() + ".loc");
          continue;
        }
        pts[it.key()].push_back(
            {kb, cell_median(cells.at("loc"),
                             "payload." + s.key() + "." + it.key() + ".loc")});
      }
    }
    for (auto& [pname, v] : pts) {
      std::sort(v.begin(), v.end());
      double distinct = 1;
      for (size_t i = 1; i < v.size(); ++i)
        if (v[i].first != v[i - 1].first) distinct++;
      if (v.size() < 2 || distinct < 2)
        throw ConfigError("payload fit for " + pname +
                          " needs two distinct payload sizes");
      std::vector<std::pair<double, double>> shifted;
      for (const auto& [kb, med] : v) shifted.push_back({kb, med - floor});
      LsFit fit = fit_line(shifted);
      NodeProfile p = profile_from_string(pname);
      emit(FunctionName::payload_echo, p, "base_ms", fit.intercept);
      emit(FunctionName::payload_echo, p, "per_kb_ms", fit.slope);
      for (const auto& [kb, med] : v) {
        char label[32];
        std::snprintf(label, sizeof(label), "%gKB", kb);
        residuals.push_back(residual_line("payload-echo", pname, label, med,
                                          floor + fit.intercept + fit.slope * kb));
      }
    }
  }

  if (root.contains("fib_service_ms")) {
    const json& sec = root.at("fib_service_ms");
    if (!sec.is_object())
      throw ConfigError("reference section fib_service_ms must be an object");
    for (auto it = sec.begin(); it != sec.end(); ++it) {
      NodeProfile p = profile_from_string(it.key());
      const json& entries = it.value();
      if (!entries.is_object())
        throw ConfigError("fib_service_ms." + it.key() + " must map n to milliseconds");
      // x is millions of calls so the slope lands directly in ns per call.
      std::vector<std::pair<double, double>> v;
      std::vector<int> ns;
      for (auto e = entries.begin(); e != entries.end(); ++e) {
        int n = parse_fib_key(e.key());
        double ms = cell_median(e.value(), "fib_service_ms." + it.key() + "." + e.key());
        v.push_back({static_cast<double>(fib_calls(n)) / 1e6, ms});
        ns.push_back(n);
      }
      std::sort(v.begin(), v.end());
      std::sort(ns.begin(), ns.end());
      double distinct = 1;
      for (size_t i = 1; i < v.size(); ++i)
        if (v[i].first != v[i - 1].first) distinct++;
      if (v.size() < 2 || distinct < 2)
        throw ConfigError("fib fit for " + it.key() + " needs two distinct n values");
      LsFit fit = fit_line(v);
      emit(FunctionName::fib_go, p, "base_ms", fit.intercept);
      emit(FunctionName::fib_go, p, "per_call_ns", fit.slope);
      for (size_t i = 0; i < v.size(); ++i) {
        char label[32];
        std::snprintf(label, sizeof(label), "n=%d", ns[i]);
        residuals.push_back(residual_line("fib-go", it.key(), label, v[i].second,
                                          fit.intercept + fit.slope * v[i].first));
      }
    }
  }

  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string msg = "missing reference keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }

  std::sort(lines.begin(), lines.end());
  CalibrationResult result;
  result.config_text = "# fitted service constants\n";
  for (const auto& l : lines) result.config_text += l + "\n";
  result.residual_lines = std::move(residuals);
  return result;
}

}  // namespace faasbench
