// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_EXPERIMENT_HPP_
#define PONSHARE_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ponshare/allocation.hpp"
#include "ponshare/topology.hpp"

namespace ponshare {

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;         // sample standard deviation (n - 1)
  double std_error = 0.0;  // sd / sqrt(n)
  double rse = 0.0;        // std_error / mean; 0 if mean == 0 and sd == 0, NaN if only mean == 0
};

// Requires at least two samples for sd; with fewer, sd, std_error and rse are 0.
SampleStats compute_stats(std::span<const double> samples);

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Indices are handed out dynamically; the first exception
// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// Thread budget from the PONSHARE_THREADS environment variable, or 0 when
// unset or malformed.
unsigned threads_from_env();

// A PON population: everything that determines the distribution of sampled
// PONs. Offered load is not part of it, so one sample serves every load.
struct Population {
  int g = 32;
  double s = 0.3;
  RnPolicy rn_policy = FixedStages{};
  double r = 0.0;
};

// Seed of replicate k of a population. Depends only on the master seed, the
// population coordinates, k, and the regeneration attempt.
std::uint64_t replicate_seed(std::uint64_t master_seed, const Population& pop,
                             std::uint64_t replicate, std::uint64_t attempt = 0);

struct ReplicatePon {
  PonGraph pon;
  std::size_t regenerated = 0;  // draws discarded because N was 0
};

// Draws replicate k, regenerating with the next attempt index while the PON
// has no ONUs.
ReplicatePon draw_replicate(std::uint64_t master_seed, const Population& pop,
                            std::uint64_t replicate);

struct PopulationResult {
  SampleStats stats;
  std::size_t regenerated = 0;
};

struct PopulationRequest {
  Population population;
  double load = 2.0;
  CapacityConfig capacity;
  std::size_t sample_size = 300;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

PopulationResult evaluate_population(const PopulationRequest& request);

enum class Scenario : int {
  kFixedActive = 1,   // active RNs at stage 2; grid over (r, l)
  kRandomActive = 2,  // RNs active with probability q; grid over (r, q) at fixed load
};

// Default grids. r has 29 values: 0, 0.001..0.009, 0.01..0.09, 0.1..1.
std::vector<double> default_r_grid();
std::vector<double> default_l_grid();  // 1, 1.1, ..., 2
std::vector<double> default_q_grid();  // 0, 0.1, ..., 1

struct ScenarioConfig {
  Scenario scenario = Scenario::kFixedActive;
  int g = 32;
  double s = 0.3;
  CapacityConfig capacity;
  std::vector<double> r_grid = default_r_grid();
  std::vector<double> l_grid = default_l_grid();  // scenario 1
  std::vector<double> q_grid = default_q_grid();  // scenario 2
  double fixed_load = 2.0;                        // scenario 2
  FixedStages stages;                             // scenario 1
  std::size_t sample_size = 300;
  double rse_target = 0.01;
  // Adaptive mode: keep adding batches of sample_size replicates to a
  // population until every one of its points meets rse_target, or
  // adaptive_cap replicates have been drawn.
  bool adaptive = false;
  std::size_t adaptive_cap = 3000;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // Throws std::invalid_argument on empty grids, sample_size < 2, or
  // out-of-range values.
  void validate() const;
};

struct SurfacePoint {
  double r = 0.0;
  double y = 0.0;  // l for scenario 1, q for scenario 2
  SampleStats stats;
  std::size_t regenerated = 0;
};

struct ScenarioResult {
  Scenario scenario = Scenario::kFixedActive;
  std::vector<SurfacePoint> points;    // row-major: r outer, y inner
  std::vector<SurfacePoint> baseline;  // no-sharing p = 1/l, same layout
  double wall_seconds = 0.0;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

struct RunReport {
  std::size_t point_count = 0;
  std::size_t total_samples = 0;
  std::vector<std::size_t> sample_counts;  // per point
  double max_rse = 0.0;                    // NaN if any point's RSE is NaN
  double rse_target = 0.0;
  std::vector<std::size_t> flagged;        // indices with rse > target or NaN
  double wall_seconds = 0.0;
};

RunReport summarize(const ScenarioResult& result, double rse_target);

}  // namespace ponshare

#endif  // PONSHARE_EXPERIMENT_HPP_
