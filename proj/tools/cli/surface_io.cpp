// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "cli/surface_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace ponshare::cli {

namespace {

std::string num(const char* fmt, double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string g6(double x) { return num("%.6g", x); }
std::string g10(double x) { return num("%.10g", x); }

void append_blocks(std::string& out, const std::vector<SurfacePoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SurfacePoint& pt = points[i];
    if (i > 0 && pt.r != points[i - 1].r) out += '\n';
    out += g6(pt.r) + ' ' + g6(pt.y) + ' ' + g6(pt.stats.mean) + '\n';
  }
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_surface_table(const ScenarioResult& result, bool include_baseline) {
  std::string out;
  append_blocks(out, result.points);
  if (include_baseline) {
    out += "\n# no-sharing baseline\n";
    append_blocks(out, result.baseline);
  }
  return out;
}

std::string format_surface_csv(const ScenarioResult& result, bool baseline) {
  const char* y = result.scenario == Scenario::kFixedActive ? "l" : "q";
  std::string out = std::string("r,") + y + ",p,stderr,rse,n\n";
  for (const SurfacePoint& pt : baseline ? result.baseline : result.points) {
    out += g10(pt.r) + ',' + g10(pt.y) + ',' + g10(pt.stats.mean) + ',' +
           g10(pt.stats.std_error) + ',' + g10(pt.stats.rse) + ',' + std::to_string(pt.stats.n) +
           '\n';
  }
  return out;
}

std::string format_run_report(const ScenarioConfig& config, const RunReport& report,
                              const ScenarioResult& result) {
  nlohmann::json j;
  j["tool"] = "ponshare";
  j["version"] = PONSHARE_VERSION;
  j["scenario"] = static_cast<int>(config.scenario);
  j["seed"] = config.seed;
  j["g"] = config.g;
  j["s"] = config.s;
  j["capacity"] = {{"down", config.capacity.down}, {"up", config.capacity.up},
                   {"ic", config.capacity.ic}};
  j["samples"] = config.sample_size;
  j["adaptive"] = config.adaptive;
  if (config.adaptive) j["adaptive_cap"] = config.adaptive_cap;
  if (config.scenario == Scenario::kRandomActive) j["load"] = config.fixed_load;
  j["points"] = report.point_count;
  j["total_samples"] = report.total_samples;
  j["max_rse"] = number_or_null(report.max_rse);
  j["rse_target"] = report.rse_target;
  j["regenerated"] = [&] {
    std::size_t total = 0;
    for (const SurfacePoint& pt : result.points) total += pt.regenerated;
    return total;
  }();
  nlohmann::json flagged = nlohmann::json::array();
  const char* y = config.scenario == Scenario::kFixedActive ? "l" : "q";
  for (std::size_t i : report.flagged) {
    const SurfacePoint& pt = result.points[i];
    flagged.push_back({{"r", pt.r}, {y, pt.y}, {"rse", number_or_null(pt.stats.rse)},
                       {"n", pt.stats.n}});
  }
  j["flagged"] = std::move(flagged);
  return j.dump(2) + "\n";
}

}  // namespace ponshare::cli
