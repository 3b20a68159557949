// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "ponshare/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ponshare {

namespace {

bool non_negative_finite(double x) { return std::isfinite(x) && x >= 0.0; }

NodeId ingress_of(const Alternative& a) {
  return a.kind == SourceKind::kOlt ? kNoNode : a.source;
}
NodeId ingress_of(const Route& r) { return r.kind == SourceKind::kOlt ? kNoNode : r.source; }

// Grants over one path. Returns the amount granted.
double grant_on_path(ResidualState& state, std::span<const Hop> hops, NodeId ingress,
                     double remaining) {
  const double amount = std::min(remaining, state.bottleneck(hops, ingress));
  if (amount > 0.0) state.consume(hops, ingress, amount);
  return amount > 0.0 ? amount : 0.0;
}

void validate_demands(const PonGraph& pon, const DemandProfile& demands) {
  const auto& per_onu = demands.per_onu();
  if (per_onu.size() != pon.onu_count()) {
    throw StructuralError("demand profile lists " + std::to_string(per_onu.size()) +
                          " ONUs, PON has " + std::to_string(pon.onu_count()));
  }
  for (const auto& [id, b] : per_onu) {
    if (id >= pon.node_count() || !is_onu(pon.kind(id))) {
      throw StructuralError("demand profile names node " + std::to_string(id) +
                            ", which is not an ONU of the PON");
    }
  }
}

}  // namespace

void CapacityConfig::validate() const {
  if (!non_negative_finite(down) || !non_negative_finite(up) || !non_negative_finite(ic)) {
    throw std::invalid_argument("capacities must be finite and non-negative");
  }
}

DemandProfile::DemandProfile(std::map<NodeId, double> per_onu) : per_onu_(std::move(per_onu)) {
  for (const auto& [id, b] : per_onu_) {
    if (!non_negative_finite(b)) {
      throw std::invalid_argument("demand of ONU " + std::to_string(id) +
                                  " must be finite and non-negative");
    }
  }
}

DemandProfile DemandProfile::uniform(const PonGraph& pon, double c, double l) {
  if (!non_negative_finite(l)) throw std::invalid_argument("load must be finite and >= 0");
  const double b = pon.onu_count() == 0 ? 0.0 : c * l / static_cast<double>(pon.onu_count());
  std::map<NodeId, double> per_onu;
  for (NodeId n : pon.onus()) per_onu.emplace_hint(per_onu.end(), n, b);
  return DemandProfile(std::move(per_onu));
}

ResidualState::ResidualState(const PonGraph& pon, const CapacityConfig& cfg)
    : down_(pon.fiber_count(), cfg.down), up_(pon.fiber_count(), cfg.up),
      ingress_(pon.node_count(), 0.0) {
  cfg.validate();
  for (NodeId n : pon.ic_onus()) ingress_[n] = cfg.ic;
}

double ResidualState::fiber(FiberId f, Direction dir) const {
  return dir == Direction::kDownstream ? down_.at(f) : up_.at(f);
}

double ResidualState::bottleneck(std::span<const Hop> hops, NodeId source) const {
  double b = source == kNoNode ? INFINITY : ingress_.at(source);
  for (const Hop& h : hops) b = std::min(b, fiber(h.fiber, h.dir));
  return b;
}

void ResidualState::consume(std::span<const Hop> hops, NodeId source, double amount) {
  if (!(amount >= 0.0) || amount > bottleneck(hops, source)) {
    throw std::invalid_argument("grant exceeds residual capacity");
  }
  if (source != kNoNode) ingress_[source] -= amount;
  for (const Hop& h : hops) {
    (h.dir == Direction::kDownstream ? down_ : up_).at(h.fiber) -= amount;
  }
}

double grant_db(ResidualState& state, NodeId /*onu*/, double demand,
                std::span<const Alternative> alts) {
  double granted = 0.0;
  double remaining = demand;
  for (const Alternative& a : alts) {
    if (remaining <= 0.0) break;
    const double amount = grant_on_path(state, a.hops, ingress_of(a), remaining);
    granted += amount;
    remaining -= amount;
  }
  return granted;
}

PerformanceReport calculate_performance(const PonGraph& pon, const RouteTable& routes,
                                        double load, const CapacityConfig& cfg,
                                        const DemandProfile& demands,
                                        const EvalOptions& options) {
  validate_demands(pon, demands);
  if (routes.by_node.size() != pon.node_count()) {
    throw std::invalid_argument("route table does not belong to this PON");
  }

  auto kept = [&options](const Route& r) {
    return options.sharing || r.kind == SourceKind::kOlt;
  };

  const std::vector<NodeId> onus = pon.onus();
  std::vector<std::size_t> alt_count(pon.node_count(), 0);
  for (NodeId n : onus) {
    const auto list = routes.of(n);
    alt_count[n] = static_cast<std::size_t>(std::count_if(list.begin(), list.end(), kept));
  }

  // Priorities are fixed up front: fewest alternatives first, then id.
  std::vector<NodeId> order = onus;
  std::stable_sort(order.begin(), order.end(),
                   [&alt_count](NodeId a, NodeId b) { return alt_count[a] < alt_count[b]; });

  ResidualState state(pon, cfg);
  std::vector<double> granted(pon.node_count(), 0.0);
  PerformanceReport report;
  std::vector<Hop> hops;
  for (NodeId n : order) {
    double remaining = demands.of(n);
    for (const Route& r : routes.of(n)) {
      if (remaining <= 0.0) break;
      if (!kept(r)) continue;
      hops.clear();
      append_route_hops(pon, n, r, hops);
      const double amount = grant_on_path(state, hops, ingress_of(r), remaining);
      granted[n] += amount;
      remaining -= amount;
      if (options.record_ledger && amount > 0.0) {
        report.ledger.push_back({n, r.source, r.kind, r.hop_count, amount});
      }
    }
  }

  report.onu_count = onus.size();
  report.load = load;
  report.onus.reserve(onus.size());
  double sum = 0.0;
  for (NodeId n : onus) {
    const double requested = demands.of(n);
    const double ratio = requested > 0.0 ? std::min(1.0, granted[n] / requested) : 1.0;
    report.onus.push_back({n, requested, granted[n], ratio});
    sum += ratio;
  }
  report.p = onus.empty() ? 0.0 : sum / static_cast<double>(onus.size());
  return report;
}

PerformanceReport calculate_performance(const PonGraph& pon, double load,
                                        const CapacityConfig& cfg,
                                        const DemandProfile& demands,
                                        const EvalOptions& options) {
  return calculate_performance(pon, find_routes(pon, options.sharing), load, cfg, demands,
                               options);
}

PerformanceReport calculate_performance(const PonGraph& pon, double load,
                                        const CapacityConfig& cfg,
                                        const EvalOptions& options) {
  return calculate_performance(pon, load, cfg, DemandProfile::uniform(pon, cfg.down, load),
                               options);
}

}  // namespace ponshare
