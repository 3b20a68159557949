// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_ALLOCATION_HPP_
#define PONSHARE_ALLOCATION_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "ponshare/pathing.hpp"
#include "ponshare/topology.hpp"

namespace ponshare {

// Per-fiber and per-ingress capacities, Gb/s.
struct CapacityConfig {
  double down = 10.0;  // downstream, every fiber
  double up = 2.5;     // upstream, every fiber
  double ic = 2.5;     // interoperator ingress of each IC-ONU

  // Throws std::invalid_argument on negative or non-finite values.
  void validate() const;
};

// Requested downstream bitrate per ONU, Gb/s.
class DemandProfile {
 public:
  explicit DemandProfile(std::map<NodeId, double> per_onu);

  // b = c * l / N for every ONU of pon.
  static DemandProfile uniform(const PonGraph& pon, double c, double l);

  const std::map<NodeId, double>& per_onu() const { return per_onu_; }
  double of(NodeId onu) const { return per_onu_.at(onu); }

 private:
  std::map<NodeId, double> per_onu_;
};

// Remaining capacity while one PON is being served. Residuals start at the
// configured capacities and only ever decrease.
class ResidualState {
 public:
  ResidualState(const PonGraph& pon, const CapacityConfig& cfg);

  double fiber(FiberId f, Direction dir) const;
  // Remaining ingress of an IC-ONU; 0 for every other node.
  double ingress(NodeId n) const { return ingress_.at(n); }

  // Bottleneck of a path sourced at source (kNoNode = no ingress limit).
  double bottleneck(std::span<const Hop> hops, NodeId source) const;
  // Takes amount off every hop and off the ingress of source.
  // Throws std::invalid_argument if any residual would go negative.
  void consume(std::span<const Hop> hops, NodeId source, double amount);

 private:
  std::vector<double> down_;
  std::vector<double> up_;
  std::vector<double> ingress_;
};

struct GrantRecord {
  NodeId onu;
  NodeId source;
  SourceKind kind;
  std::uint32_t hop_count;
  double amount;
};

// Serves demand over alts in the given order. Each alternative receives
// min(remaining demand, bottleneck), where the bottleneck covers every hop in
// its direction and, for IC and SELF alternatives, the source's ingress.
// Stops once the demand is met. Returns the total granted, in [0, demand].
double grant_db(ResidualState& state, NodeId onu, double demand,
                std::span<const Alternative> alts);

struct OnuPerformance {
  NodeId onu;
  double requested;
  double granted;
  double ratio;  // granted / requested, or 1 when nothing was requested
};

struct PerformanceReport {
  std::vector<OnuPerformance> onus;  // ascending id
  double p = 0.0;                    // mean of the ratios
  std::size_t onu_count = 0;
  double load = 0.0;
  std::vector<GrantRecord> ledger;   // filled only when requested
};

struct EvalOptions {
  bool sharing = true;        // false: OLT alternatives only
  bool record_ledger = false;
};

// Greedy downstream allocation. ONUs are served by ascending alternative
// count, ties by ascending id, against a fresh ResidualState. IC grants count
// in full: the result is an upper bound.
//
// Throws StructuralError if demands does not name exactly the ONUs of pon.
PerformanceReport calculate_performance(const PonGraph& pon, double load,
                                        const CapacityConfig& cfg,
                                        const DemandProfile& demands,
                                        const EvalOptions& options = {});

// Uniform demand b = cfg.down * load / N.
PerformanceReport calculate_performance(const PonGraph& pon, double load,
                                        const CapacityConfig& cfg,
                                        const EvalOptions& options = {});

// Same as above with routes computed beforehand (find_routes with the same
// sharing flag), so one PON can be evaluated at many loads.
PerformanceReport calculate_performance(const PonGraph& pon, const RouteTable& routes,
                                        double load, const CapacityConfig& cfg,
                                        const DemandProfile& demands,
                                        const EvalOptions& options = {});

}  // namespace ponshare

#endif  // PONSHARE_ALLOCATION_HPP_
