// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "cli/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/oracle_check.hpp"
#include "cli/surface_io.hpp"
#include "ponshare/allocation.hpp"
#include "ponshare/experiment.hpp"
#include "ponshare/rng.hpp"
#include "ponshare/topology.hpp"

namespace ponshare::cli {

namespace {

struct CapacityFlags {
  double down = 10.0;
  double up = 2.5;
  double ic = 2.5;

  void attach(CLI::App& app) {
    app.add_option("--c-down", down, "Downstream capacity per fiber, Gb/s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--c-up", up, "Upstream capacity per fiber, Gb/s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--c-ic", ic, "Interoperator ingress per IC-ONU, Gb/s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
  CapacityConfig config() const { return {down, up, ic}; }
};

struct GenerateFlags {
  int g = 32;
  double s = 0.3;
  double r = 0.0;
  std::string policy = "fixed";
  double q = 0.0;
  std::vector<int> active_stages{2};
  std::uint64_t seed = 1;
  std::string out;
};

struct EvalFlags {
  std::string pon;
  double l = 2.0;
  std::string r_override = "none";
  std::uint64_t seed = 1;
  bool no_sharing = false;
  bool per_onu = false;
  CapacityFlags capacity;
};

struct ScenarioFlags {
  int g = 32;
  double s = 0.3;
  std::vector<double> r_grid = default_r_grid();
  std::vector<double> l_grid = default_l_grid();
  std::vector<double> q_grid = default_q_grid();
  double load = 2.0;
  std::size_t samples = 300;
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
  std::string out;
  std::string format = "surface";
  bool baseline = false;
  bool adaptive = false;
  std::size_t adaptive_cap = 3000;
  double rse_target = 0.01;
  CapacityFlags capacity;
};

struct OracleFlags {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int do_generate(const GenerateFlags& f, std::ostream& out) {
  GenParams params;
  params.g = f.g;
  params.s = f.s;
  params.ic_prob = f.r;
  params.seed = f.seed;
  if (f.policy == "random") {
    params.rn_policy = RandomActive{f.q};
  } else {
    FixedStages stages;
    stages.active = {false, false, false};
    for (int st : f.active_stages) stages.active[static_cast<std::size_t>(st - 1)] = true;
    params.rn_policy = stages;
  }
  const PonGraph pon = generate_pon(params);
  const std::string text = serialize_pon(pon);
  if (f.out.empty() || f.out == "-") {
    out << text;
  } else {
    write_text(f.out, text);
    out << "wrote " << f.out << ": N " << pon.onu_count() << ", R " << pon.rn_count() << "\n";
  }
  return kExitOk;
}

int do_eval(const EvalFlags& f, std::ostream& out) {
  PonGraph pon = load_pon(f.pon);
  if (f.r_override != "none") {
    double r = 0.0;
    try {
      std::size_t used = 0;
      r = std::stod(f.r_override, &used);
      if (used != f.r_override.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw CLI::ValidationError("--r-override", "expected 'none' or a probability");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
      throw CLI::ValidationError("--r-override", "probability must be in [0, 1]");
    }
    Rng rng(f.seed);
    for (NodeId n : pon.onus()) pon.set_ic_capable(n, rng.bernoulli(r));
  }

  EvalOptions opts;
  opts.sharing = !f.no_sharing;
  const PerformanceReport rep = calculate_performance(pon, f.l, f.capacity.config(), opts);
  out << "N " << pon.onu_count() << "\n";
  out << "R " << pon.rn_count() << "\n";
  out << "IC " << pon.ic_onus().size() << "\n";
  out << "l " << fmt6(f.l) << "\n";
  out << "p " << fmt6(rep.p) << "\n";
  if (f.per_onu) {
    for (const OnuPerformance& o : rep.onus) {
      out << "onu " << o.onu << " " << kind_token(pon.kind(o.onu)) << " granted "
          << fmt6(o.granted) << " p " << fmt6(o.ratio) << "\n";
    }
  }
  return kExitOk;
}

int do_scenario(Scenario which, const ScenarioFlags& f, std::ostream& out) {
  ScenarioConfig cfg;
  cfg.scenario = which;
  cfg.g = f.g;
  cfg.s = f.s;
  cfg.capacity = f.capacity.config();
  cfg.r_grid = f.r_grid;
  cfg.l_grid = f.l_grid;
  cfg.q_grid = f.q_grid;
  cfg.fixed_load = f.load;
  cfg.sample_size = f.samples;
  cfg.rse_target = f.rse_target;
  cfg.adaptive = f.adaptive;
  cfg.adaptive_cap = f.adaptive_cap;
  cfg.seed = f.seed;
  cfg.threads = f.threads ? *f.threads : threads_from_env();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(e.what());
  }

  const ScenarioResult result = run_scenario(cfg);
  const RunReport report = summarize(result, cfg.rse_target);

  const bool csv = f.format == "csv";
  const std::string table = csv ? format_surface_csv(result) : format_surface_table(result, f.baseline);
  if (f.out.empty() || f.out == "-") {
    out << table;
  } else {
    write_text(f.out, table);
    write_text(f.out + ".report.json", format_run_report(cfg, report, result));
    if (csv && f.baseline) write_text(f.out + ".baseline.csv", format_surface_csv(result, true));
    out << "wrote " << f.out << " (" << report.point_count << " points, "
        << report.total_samples << " samples)\n";
    out << "max rse " << fmt6(report.max_rse) << ", " << report.flagged.size()
        << " point(s) above " << fmt6(cfg.rse_target) << ", " << fmt6(report.wall_seconds)
        << " s\n";
  }
  return kExitOk;
}

int do_oracle_check(const OracleFlags& f, std::ostream& out) {
  const CrossCheckSummary sum = cross_check(f.count, f.seed);
  out << "pons " << sum.pons << ", pairs " << sum.pairs << ", max |dp| " << sum.max_p_diff
      << "\n";
  out << "hop mismatches " << sum.hop_mismatches << ", p mismatches " << sum.p_mismatches
      << ", ledger mismatches " << sum.ledger_mismatches << "\n";
  for (const std::string& msg : sum.failures) out << "  " << msg << "\n";
  out << (sum.ok() ? "oracle-check: OK\n" : "oracle-check: FAILED\n");
  return sum.ok() ? kExitOk : kExitRuntime;
}

void add_scenario_flags(CLI::App& cmd, ScenarioFlags& f, Scenario which) {
  cmd.add_option("--g", f.g, "Splitter outputs per RN")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--s", f.s, "Branch probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd.add_option("--r", f.r_grid, "IC probability grid, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  if (which == Scenario::kFixedActive) {
    cmd.add_option("--l", f.l_grid, "Offered load grid, comma separated")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
  } else {
    cmd.add_option("--q", f.q_grid, "RN activity probability grid, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--l", f.load, "Offered load")->check(CLI::NonNegativeNumber)->capture_default_str();
  }
  cmd.add_option("--samples", f.samples, "PONs per population")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))
      ->capture_default_str();
  cmd.add_option("--seed", f.seed, "Master seed")->capture_default_str();
  cmd.add_option("--threads", f.threads, "Worker threads (default: PONSHARE_THREADS or all cores)");
  cmd.add_option("--out,-o", f.out, "Surface output path (default stdout)");
  cmd.add_option("--format", f.format, "surface | csv")
      ->check(CLI::IsMember({"surface", "csv"}))
      ->capture_default_str();
  cmd.add_flag("--baseline", f.baseline, "Also emit the no-sharing surface");
  cmd.add_flag("--adaptive", f.adaptive, "Sample until every point meets --rse-target");
  cmd.add_option("--adaptive-cap", f.adaptive_cap, "Replicate cap in adaptive mode")->capture_default_str();
  cmd.add_option("--rse-target", f.rse_target, "RSE threshold for flagging")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  f.capacity.attach(cmd);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ponshare: downstream performance of PONs under interoperator sharing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PONSHARE_VERSION));

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Draw one random three-stage PON");
  generate->add_option("--g", gen.g, "Splitter outputs per RN")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--s", gen.s, "Branch probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  generate->add_option("--r", gen.r, "IC probability per ONU")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  generate->add_option("--rn-policy", gen.policy, "fixed | random")
      ->check(CLI::IsMember({"fixed", "random"}))
      ->capture_default_str();
  generate->add_option("--q", gen.q, "RN activity probability (random policy)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  generate->add_option("--active-stages", gen.active_stages, "Active stages (fixed policy)")
      ->delimiter(',')
      ->check(CLI::Range(1, 3));
  generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  generate->add_option("--out,-o", gen.out, "Output path (default stdout)");

  EvalFlags ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one PON file");
  eval->add_option("--pon", ev.pon, "PON file")->required();
  eval->add_option("--l", ev.l, "Offered load")->check(CLI::NonNegativeNumber)->capture_default_str();
  eval->add_option("--r-override", ev.r_override,
                   "'none' keeps the file's IC flags; a probability redraws them with --seed")
      ->capture_default_str();
  eval->add_option("--seed", ev.seed, "Seed for --r-override")->capture_default_str();
  eval->add_flag("--no-sharing", ev.no_sharing, "Serve from the OLT only");
  eval->add_flag("--per-onu", ev.per_onu, "Print per-ONU grants");
  ev.capacity.attach(*eval);

  ScenarioFlags sc1;
  auto* scenario1 = app.add_subcommand("scenario1", "(r, l) surface, active RNs at stage 2");
  add_scenario_flags(*scenario1, sc1, Scenario::kFixedActive);

  ScenarioFlags sc2;
  auto* scenario2 = app.add_subcommand("scenario2", "(r, q) surface, randomly active RNs");
  add_scenario_flags(*scenario2, sc2, Scenario::kRandomActive);

  OracleFlags oc;
  auto* oracle_check = app.add_subcommand("oracle-check", "Cross-check against brute-force oracles");
  oracle_check->add_option("--count", oc.count, "Random PONs to check")->capture_default_str();
  oracle_check->add_option("--seed", oc.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return do_generate(gen, out);
    if (*eval) return do_eval(ev, out);
    if (*scenario1) return do_scenario(Scenario::kFixedActive, sc1, out);
    if (*scenario2) return do_scenario(Scenario::kRandomActive, sc2, out);
    if (*oracle_check) return do_oracle_check(oc, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ponshare"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ponshare::cli
