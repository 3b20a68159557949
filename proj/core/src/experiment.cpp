// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "ponshare/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ponshare/pathing.hpp"
#include "ponshare/rng.hpp"

namespace ponshare {

namespace {

constexpr std::uint64_t kFixedStagesTag = 1;
constexpr std::uint64_t kRandomActiveTag = 2;

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

// One population of a scenario together with the surface points it feeds.
struct PopulationPlan {
  Population population;
  double r = 0.0;
  std::vector<double> ys;     // surface coordinate per point
  std::vector<double> loads;  // offered load per point
};

std::vector<PopulationPlan> plan(const ScenarioConfig& cfg) {
  std::vector<PopulationPlan> plans;
  for (double r : cfg.r_grid) {
    if (cfg.scenario == Scenario::kFixedActive) {
      plans.push_back({Population{cfg.g, cfg.s, cfg.stages, r}, r, cfg.l_grid, cfg.l_grid});
    } else {
      for (double q : cfg.q_grid) {
        plans.push_back({Population{cfg.g, cfg.s, RandomActive{q}, r}, r, {q}, {cfg.fixed_load}});
      }
    }
  }
  return plans;
}

bool needs_more(const std::vector<std::vector<double>>& per_point, double target) {
  for (const auto& samples : per_point) {
    const double rse = compute_stats(samples).rse;
    if (!(rse <= target)) return true;
  }
  return false;
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master_seed, const Population& pop,
                             std::uint64_t replicate, std::uint64_t attempt) {
  std::uint64_t tag = 0;
  std::uint64_t policy_key = 0;
  if (const auto* fixed = std::get_if<FixedStages>(&pop.rn_policy)) {
    tag = kFixedStagesTag;
    for (std::size_t i = 0; i < fixed->active.size(); ++i) {
      if (fixed->active[i]) policy_key |= std::uint64_t{1} << i;
    }
  } else {
    tag = kRandomActiveTag;
    policy_key = key_of(std::get<RandomActive>(pop.rn_policy).q);
  }
  return mix_seed({master_seed, static_cast<std::uint64_t>(pop.g), key_of(pop.s), tag, policy_key,
                   key_of(pop.r), replicate, attempt});
}

ReplicatePon draw_replicate(std::uint64_t master_seed, const Population& pop,
                            std::uint64_t replicate) {
  GenParams params{pop.g, pop.s, pop.rn_policy, pop.r, 0};
  for (std::uint64_t attempt = 0;; ++attempt) {
    params.seed = replicate_seed(master_seed, pop, replicate, attempt);
    PonGraph pon = generate_pon(params);
    if (pon.onu_count() > 0) return {std::move(pon), static_cast<std::size_t>(attempt)};
  }
}

PopulationResult evaluate_population(const PopulationRequest& req) {
  if (req.sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
  std::vector<double> p(req.sample_size);
  std::vector<std::size_t> regenerated(req.sample_size);
  parallel_for(req.sample_size, req.threads, [&](std::size_t k) {
    ReplicatePon rep = draw_replicate(req.seed, req.population, k);
    p[k] = calculate_performance(rep.pon, req.load, req.capacity).p;
    regenerated[k] = rep.regenerated;
  });
  PopulationResult out;
  out.stats = compute_stats(p);
  for (std::size_t x : regenerated) out.regenerated += x;
  return out;
}

std::vector<double> default_r_grid() {
  std::vector<double> r{0.0};
  for (int i = 1; i <= 9; ++i) r.push_back(i / 1000.0);
  for (int i = 1; i <= 9; ++i) r.push_back(i / 100.0);
  for (int i = 1; i <= 10; ++i) r.push_back(i / 10.0);
  return r;
}

std::vector<double> default_l_grid() {
  std::vector<double> l;
  for (int i = 10; i <= 20; ++i) l.push_back(i / 10.0);
  return l;
}

std::vector<double> default_q_grid() {
  std::vector<double> q;
  for (int i = 0; i <= 10; ++i) q.push_back(i / 10.0);
  return q;
}

void ScenarioConfig::validate() const {
  if (scenario != Scenario::kFixedActive && scenario != Scenario::kRandomActive) {
    throw std::invalid_argument("scenario must be 1 or 2");
  }
  GenParams{g, s, FixedStages{}, 0.0, 0}.validate();
  capacity.validate();
  if (r_grid.empty()) throw std::invalid_argument("r grid is empty");
  for (double r : r_grid) {
    if (!is_probability(r)) throw std::invalid_argument("r grid values must be in [0, 1]");
  }
  if (scenario == Scenario::kFixedActive) {
    if (l_grid.empty()) throw std::invalid_argument("l grid is empty");
    for (double l : l_grid) {
      if (!(std::isfinite(l) && l >= 0.0)) throw std::invalid_argument("l grid values must be >= 0");
    }
  } else {
    if (q_grid.empty()) throw std::invalid_argument("q grid is empty");
    for (double q : q_grid) {
      if (!is_probability(q)) throw std::invalid_argument("q grid values must be in [0, 1]");
    }
    if (!(std::isfinite(fixed_load) && fixed_load >= 0.0)) {
      throw std::invalid_argument("load must be >= 0");
    }
  }
  if (sample_size < 2) throw std::invalid_argument("sample_size must be >= 2");
  if (adaptive && adaptive_cap < sample_size) {
    throw std::invalid_argument("adaptive cap must be >= sample_size");
  }
  if (!(rse_target >= 0.0)) throw std::invalid_argument("rse target must be >= 0");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::vector<PopulationPlan> plans = plan(cfg);

  // samples[pop][point][replicate]
  std::vector<std::vector<std::vector<double>>> samples(plans.size());
  std::vector<std::size_t> regenerated(plans.size(), 0);
  for (std::size_t i = 0; i < plans.size(); ++i) samples[i].resize(plans[i].loads.size());

  struct Task {
    std::size_t pop;
    std::size_t replicate;
  };
  std::vector<std::size_t> active(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) active[i] = i;

  while (!active.empty()) {
    std::vector<Task> tasks;
    for (std::size_t pop : active) {
      const std::size_t have = samples[pop].front().size();
      const std::size_t want =
          cfg.adaptive ? std::min(have + cfg.sample_size, cfg.adaptive_cap) : cfg.sample_size;
      for (auto& per_point : samples[pop]) per_point.resize(want);
      for (std::size_t k = have; k < want; ++k) tasks.push_back({pop, k});
    }

    std::vector<std::size_t> task_regen(tasks.size(), 0);
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
      const auto [pop, k] = tasks[t];
      const PopulationPlan& pl = plans[pop];
      ReplicatePon rep = draw_replicate(cfg.seed, pl.population, k);
      task_regen[t] = rep.regenerated;
      const RouteTable routes = find_routes(rep.pon);
      for (std::size_t j = 0; j < pl.loads.size(); ++j) {
        const double l = pl.loads[j];
        const DemandProfile demands = DemandProfile::uniform(rep.pon, cfg.capacity.down, l);
        samples[pop][j][k] = calculate_performance(rep.pon, routes, l, cfg.capacity, demands).p;
      }
    });
    for (std::size_t t = 0; t < tasks.size(); ++t) regenerated[tasks[t].pop] += task_regen[t];

    std::vector<std::size_t> still;
    if (cfg.adaptive) {
      for (std::size_t pop : active) {
        if (samples[pop].front().size() < cfg.adaptive_cap &&
            needs_more(samples[pop], cfg.rse_target)) {
          still.push_back(pop);
        }
      }
    }
    active = std::move(still);
  }

  ScenarioResult result;
  result.scenario = cfg.scenario;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    for (std::size_t j = 0; j < plans[i].ys.size(); ++j) {
      SurfacePoint pt{plans[i].r, plans[i].ys[j], compute_stats(samples[i][j]), regenerated[i]};
      result.points.push_back(pt);
      SurfacePoint base{plans[i].r, plans[i].ys[j], {}, 0};
      const double l = plans[i].loads[j];
      base.stats.mean = l > 1.0 ? 1.0 / l : 1.0;
      result.baseline.push_back(base);
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

RunReport summarize(const ScenarioResult& result, double rse_target) {
  RunReport rep;
  rep.point_count = result.points.size();
  rep.rse_target = rse_target;
  rep.wall_seconds = result.wall_seconds;
  bool any_nan = false;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SampleStats& st = result.points[i].stats;
    rep.sample_counts.push_back(st.n);
    rep.total_samples += st.n;
    if (std::isnan(st.rse)) {
      any_nan = true;
    } else {
      rep.max_rse = std::max(rep.max_rse, st.rse);
    }
    if (!(st.rse <= rse_target)) rep.flagged.push_back(i);
  }
  if (any_nan) rep.max_rse = std::nan("");
  return rep;
}

}  // namespace ponshare
