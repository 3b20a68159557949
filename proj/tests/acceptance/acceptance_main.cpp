// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

// One line per criterion: "PASS <n> <name>: <detail>" or "FAIL ...".
// Exit status is the number of failed criteria (capped at 255).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "cli/oracle_check.hpp"
#include "ponshare/allocation.hpp"
#include "ponshare/experiment.hpp"
#include "ponshare/pathing.hpp"
#include "ponshare/rng.hpp"
#include "ponshare/topology.hpp"
#include "ponshare/verification.hpp"

namespace {

using namespace ponshare;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome no_sharing_baseline() {
  double worst = 0.0;
  std::size_t evals = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int g = i % 2 == 0 ? 4 : 8;
    PonGraph pon = generate_pon({g, 0.3, FixedStages{}, 0.0, mix_seed({0xACCE, 1, i})});
    if (pon.onu_count() == 0) pon = generate_pon({g, 0.3, FixedStages{}, 0.0, mix_seed({0xACCE, 2, i})});
    for (double l : default_l_grid()) {
      const double p = calculate_performance(pon, l, CapacityConfig{}).p;
      worst = std::max(worst, std::abs(p - 1.0 / l));
      ++evals;
    }
  }
  return {worst <= 1e-9, std::to_string(evals) + " evaluations, max |p - 1/l| = " + fmt("%.3g", worst)};
}

Outcome zero_active_baseline() {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::kRandomActive;
  cfg.g = 8;
  cfg.r_grid = {0.0, 0.01, 0.1, 0.5, 1.0};
  cfg.q_grid = {0.0};
  cfg.fixed_load = 2.0;
  cfg.sample_size = 100;
  cfg.threads = 0;
  const ScenarioResult res = run_scenario(cfg);
  double worst = 0.0;
  for (const SurfacePoint& pt : res.points) worst = std::max(worst, std::abs(pt.stats.mean - 0.5));
  return {worst <= 1e-9, std::to_string(res.points.size()) + " r values, max |mean - 0.5| = " + fmt("%.3g", worst)};
}

Outcome detour_paths() {
  const PonGraph pon = load_pon(std::string(PONSHARE_FIXTURE_DIR) + "/detour.pon");
  const AlternativeMap alts = find_alternatives(pon);
  const Alternative* ic = nullptr;
  for (const Alternative& a : alts.at(5)) {
    if (a.kind == SourceKind::kIcOnu && a.source == 4) ic = &a;
    if (a.hop_count == 3) return {false, "a 3-hop alternative was produced for the NIC-ONU"};
  }
  if (ic == nullptr) return {false, "no alternative from the IC-ONU"};
  if (ic->hop_count != 5) return {false, "IC alternative has " + std::to_string(ic->hop_count) + " hops"};
  bool up = false;
  bool down = false;
  for (const Hop& h : ic->hops) {
    if (h.fiber == 1 && h.dir == Direction::kUpstream) up = true;
    if (h.fiber == 1 && h.dir == Direction::kDownstream) down = true;
  }
  if (!(up && down)) return {false, "IC alternative does not turn at RN1"};

  const auto oracle = oracle::enumerate_paths(pon, 4);
  if (oracle.count(5) == 0) return {false, "oracle finds no IC path"};
  for (const oracle::OraclePath& p : oracle.at(5)) {
    if (p.hops.size() == 3) return {false, "oracle accepts the passive turn"};
  }
  const oracle::OraclePath& best = oracle.at(5).front();
  if (best.hops.size() != ic->hops.size()) return {false, "hop count differs from oracle"};
  for (std::size_t i = 0; i < best.hops.size(); ++i) {
    const bool upstream = ic->hops[i].dir == Direction::kUpstream;
    if (best.hops[i].fiber != ic->hops[i].fiber || best.hops[i].upstream != upstream) {
      return {false, "hop " + std::to_string(i) + " differs from oracle"};
    }
  }
  return {true, "IC-ONU to NIC-ONU: 5 hops via RN1, matches oracle, no 3-hop path"};
}

Outcome oracle_equivalence() {
  const cli::CrossCheckSummary s = cli::cross_check(1000, 20261014);
  std::string detail = std::to_string(s.pons) + " PONs, " + std::to_string(s.pairs) + " pairs, hop/p/ledger mismatches " +
                       std::to_string(s.hop_mismatches) + "/" + std::to_string(s.p_mismatches) + "/" +
                       std::to_string(s.ledger_mismatches) + ", max |dp| = " + fmt("%.3g", s.max_p_diff);
  if (!s.failures.empty()) detail += "; first: " + s.failures.front();
  return {s.ok() && s.pons == 1000, detail};
}

Outcome generator_statistics() {
  constexpr int kDraws = 10000;
  double n_sum = 0.0;
  double r_sum = 0.0;
  std::vector<double> n(kDraws);
  std::vector<double> r(kDraws);
  parallel_for(kDraws, 0, [&](std::size_t i) {
    const PonGraph pon = generate_pon({32, 0.3, FixedStages{}, 0.0, mix_seed({0xACCE, 5, i})});
    n[i] = static_cast<double>(pon.onu_count());
    r[i] = static_cast<double>(pon.rn_count());
  });
  for (int i = 0; i < kDraws; ++i) {
    n_sum += n[static_cast<std::size_t>(i)];
    r_sum += r[static_cast<std::size_t>(i)];
  }
  const double mean_n = n_sum / kDraws;
  const double mean_r = r_sum / kDraws;
  const bool ok = std::abs(mean_n - 3187.0) <= 0.02 * 3187.0 && std::abs(mean_r - 103.0) <= 0.02 * 103.0;
  return {ok, "mean N = " + fmt("%.2f", mean_n) + ", mean R = " + fmt("%.2f", mean_r)};
}

Outcome saturation() {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::kFixedActive;
  cfg.g = 8;
  cfg.r_grid = {1.0};
  cfg.l_grid = {2.0};
  cfg.sample_size = 50;
  cfg.threads = 0;
  // b = c_down * l / N never exceeds c_down * l, so this ingress covers b for every sample.
  cfg.capacity.ic = cfg.capacity.down * 2.0;
  const ScenarioResult res = run_scenario(cfg);
  const SampleStats& st = res.points.front().stats;
  const bool ok = st.n == 50 && st.mean == 1.0 && st.sd == 0.0;
  return {ok, std::to_string(st.n) + " samples, mean = " + fmt("%.17g", st.mean) + ", sd = " + fmt("%.3g", st.sd)};
}

Outcome desk_shape() {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::kFixedActive;
  cfg.g = 8;
  cfg.s = 0.3;
  cfg.r_grid = {0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0};
  cfg.l_grid = {2.0};
  cfg.sample_size = 300;
  cfg.threads = 0;
  const ScenarioResult res = run_scenario(cfg);
  std::ostringstream d;
  bool ok = true;
  double max_rse = 0.0;
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const SampleStats& st = res.points[i].stats;
    d << (i ? " " : "") << "r=" << res.points[i].r << ":" << fmt("%.4f", st.mean) << "(" << fmt("%.2f", 100 * st.rse)
      << "%)";
    if (!(st.rse < 0.01)) ok = false;
    max_rse = std::max(max_rse, st.rse);
    if (i > 0) {
      const SampleStats& prev = res.points[i - 1].stats;
      const double tol = 2.0 * std::sqrt(st.std_error * st.std_error + prev.std_error * prev.std_error);
      if (st.mean + tol < prev.mean) ok = false;
    }
    if (res.points[i].r == 0.5 && st.mean < 0.95) ok = false;
  }
  if (std::abs(res.points.front().stats.mean - 0.5) > 1e-9) ok = false;
  d << "; max rse " << fmt("%.3f", 100 * max_rse) << "%";
  return {ok, d.str()};
}

Outcome headline() {
  PopulationRequest req;
  req.population = Population{32, 0.3, FixedStages{}, 0.003};
  req.load = 2.0;
  req.sample_size = 300;
  req.seed = 1;
  req.threads = 0;
  const SampleStats st = evaluate_population(req).stats;
  return {st.mean >= 0.9, "g=32, r=0.003: mean p = " + fmt("%.4f", st.mean) + " (rse " +
                              fmt("%.2f", 100 * st.rse) + "%)"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ponshare_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::size_t compared = 0;
  for (const std::string sub : {"scenario1", "scenario2"}) {
    std::string files[2];
    int k = 0;
    for (const char* threads : {"1", "8"}) {
      const fs::path out = dir / (sub + "_" + threads + ".dat");
      std::ostringstream o, e;
      const int code = cli::run({sub, "--g", "8", "--r", "0,0.01,0.1,0.5", "--samples", "40", "--seed", "99",
                                 "--baseline", "--threads", threads, "--out", out.string()},
                                o, e);
      if (code != 0) return {false, sub + " exited " + std::to_string(code) + ": " + e.str()};
      files[k++] = slurp(out) + slurp(out.string() + ".report.json");
    }
    if (files[0] != files[1]) return {false, sub + " output differs between 1 and 8 threads"};
    compared += files[0].size();
  }
  fs::remove_all(dir);
  return {true, "scenario1 and scenario2 identical at 1 and 8 threads (" + std::to_string(compared) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"no-sharing baseline", no_sharing_baseline},
      {"zero-active baseline", zero_active_baseline},
      {"detour path correctness", detour_paths},
      {"oracle equivalence", oracle_equivalence},
      {"generator statistics", generator_statistics},
      {"saturation at r=1", saturation},
      {"desk-scale shape", desk_shape},
      {"full-scale headline", headline},
      {"thread determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return std::min(failed, 255);
}
