// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "ponshare/verification.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ponshare::oracle {

namespace {

struct Walker {
  const PonGraph& pon;
  NodeId source;
  bool from_ic;
  std::vector<bool> visited;  // 2 slots per node; passive RNs use one per direction
  OraclePath current;
  std::map<NodeId, std::vector<OraclePath>> found;

  std::size_t slot(NodeId n, bool up) const {
    return pon.kind(n) == NodeKind::kPassiveRn ? 2 * n + (up ? 1 : 0) : 2 * n;
  }

  // arrived: 0 = start, 1 = came up from a child, 2 = came down from the parent
  void walk(NodeId x, int arrived) {
    const NodeKind k = pon.kind(x);
    if (x != source) {
      if (is_onu(k)) {
        found[x].push_back(current);
        return;
      }
      if (from_ic && k == NodeKind::kOlt) return;
    }
    const bool passive = k == NodeKind::kPassiveRn;
    const bool may_go_up = !(passive && arrived == 2);
    const bool may_go_down = !(passive && arrived == 1);

    if (may_go_up && x != pon.olt()) {
      step(pon.parent(x), pon.uplink(x), true);
    }
    if (may_go_down) {
      for (NodeId c : pon.children(x)) step(c, pon.uplink(c), false);
    }
  }

  void step(NodeId y, FiberId via, bool up) {
    const std::size_t s = slot(y, up);
    if (visited[s]) return;
    visited[s] = true;
    current.nodes.push_back(y);
    current.hops.push_back({via, up});
    walk(y, up ? 1 : 2);
    current.hops.pop_back();
    current.nodes.pop_back();
    visited[s] = false;
  }
};

std::map<NodeId, std::vector<OraclePath>> enumerate_unbounded(const PonGraph& pon,
                                                              NodeId source) {
  if (source >= pon.node_count()) throw std::invalid_argument("unknown source");
  const NodeKind k = pon.kind(source);
  if (k != NodeKind::kOlt && k != NodeKind::kIcOnu) {
    throw std::invalid_argument("source " + std::to_string(source) +
                                " must be the OLT or an IC-ONU");
  }
  Walker w{pon, source, k == NodeKind::kIcOnu, std::vector<bool>(2 * pon.node_count()), {}, {}};
  w.visited[w.slot(source, true)] = true;
  w.visited[w.slot(source, false)] = true;
  w.current.nodes.push_back(source);
  w.walk(source, 0);
  return std::move(w.found);
}

const OraclePath* shortest(const std::vector<OraclePath>& paths) {
  const OraclePath* best = nullptr;
  for (const OraclePath& p : paths) {
    if (best == nullptr || p.hops.size() < best->hops.size()) best = &p;
  }
  return best;
}

struct Candidate {
  NodeId source;
  bool self;
  std::vector<OracleHop> hops;
};

}  // namespace

std::map<NodeId, std::vector<OraclePath>> enumerate_paths(const PonGraph& pon, NodeId source) {
  if (pon.node_count() > kMaxPathNodes) {
    throw SizeLimitError("path enumeration is limited to " + std::to_string(kMaxPathNodes) +
                         " nodes");
  }
  return enumerate_unbounded(pon, source);
}

std::map<std::pair<NodeId, NodeId>, std::size_t> minimal_hops(const PonGraph& pon) {
  std::map<std::pair<NodeId, NodeId>, std::size_t> out;
  for (NodeId i = 0; i < pon.node_count(); ++i) {
    const NodeKind k = pon.kind(i);
    if (k != NodeKind::kOlt && k != NodeKind::kIcOnu) continue;
    for (const auto& [target, paths] : enumerate_paths(pon, i)) {
      out[{i, target}] = shortest(paths)->hops.size();
    }
  }
  return out;
}

ReplayResult replay_allocation(const PonGraph& pon, double load, const ReplayCapacity& cap) {
  const std::size_t n_onus = pon.onu_count();
  if (n_onus > kMaxReplayOnus) {
    throw SizeLimitError("allocation replay is limited to " + std::to_string(kMaxReplayOnus) +
                         " ONUs");
  }

  // Alternatives per ONU: own ingress, then the shortest path from each source.
  std::map<NodeId, std::vector<Candidate>> alts;
  for (NodeId n = 0; n < pon.node_count(); ++n) {
    if (is_onu(pon.kind(n))) alts[n];
    if (pon.kind(n) == NodeKind::kIcOnu) alts[n].push_back({n, true, {}});
  }
  for (NodeId i = 0; i < pon.node_count(); ++i) {
    const NodeKind k = pon.kind(i);
    if (k != NodeKind::kOlt && k != NodeKind::kIcOnu) continue;
    for (const auto& [target, paths] : enumerate_unbounded(pon, i)) {
      alts[target].push_back({i, false, shortest(paths)->hops});
    }
  }
  for (auto& [n, list] : alts) {
    std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
      if (a.hops.size() != b.hops.size()) return a.hops.size() < b.hops.size();
      return a.source < b.source;
    });
  }

  // Fewest alternatives first, lowest id among equals.
  std::vector<NodeId> queue;
  for (const auto& [n, list] : alts) queue.push_back(n);
  std::sort(queue.begin(), queue.end(), [&alts](NodeId a, NodeId b) {
    if (alts[a].size() != alts[b].size()) return alts[a].size() < alts[b].size();
    return a < b;
  });

  std::map<std::pair<FiberId, bool>, double> fiber_left;
  for (FiberId f = 0; f < pon.fiber_count(); ++f) {
    fiber_left[{f, false}] = cap.down;
    fiber_left[{f, true}] = cap.up;
  }
  std::map<NodeId, double> ingress_left;
  for (NodeId n = 0; n < pon.node_count(); ++n) {
    if (pon.kind(n) == NodeKind::kIcOnu) ingress_left[n] = cap.ic;
  }

  const double b = n_onus == 0 ? 0.0 : cap.down * load / static_cast<double>(n_onus);
  ReplayResult result;
  std::map<NodeId, double> got;
  for (NodeId n : queue) {
    double want = b;
    for (const Candidate& c : alts[n]) {
      if (want <= 0.0) break;
      const bool via_ingress = c.self || pon.kind(c.source) == NodeKind::kIcOnu;
      double room = via_ingress ? ingress_left[c.source] : std::numeric_limits<double>::infinity();
      for (const OracleHop& h : c.hops) room = std::min(room, fiber_left[{h.fiber, h.upstream}]);
      const double amount = std::min(want, room);
      if (!(amount > 0.0)) continue;
      if (via_ingress) ingress_left[c.source] -= amount;
      for (const OracleHop& h : c.hops) fiber_left[{h.fiber, h.upstream}] -= amount;
      got[n] += amount;
      want -= amount;
      result.ledger.push_back({n, c.source, c.self, c.hops.size(), amount});
    }
  }

  double sum = 0.0;
  for (const auto& [n, list] : alts) {
    const double ratio = b > 0.0 ? std::min(1.0, got[n] / b) : 1.0;
    result.ratio.push_back(ratio);
    sum += ratio;
  }
  result.p = n_onus == 0 ? 0.0 : sum / static_cast<double>(n_onus);
  return result;
}

}  // namespace ponshare::oracle
