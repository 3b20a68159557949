// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_VERIFICATION_HPP_
#define PONSHARE_VERIFICATION_HPP_

// Brute-force reference implementations for small PONs. Nothing here uses
// the split graph, the BFS, or the allocation code; paths are enumerated on
// the tree itself with the passive-RN direction rule applied per step.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ponshare/topology.hpp"

namespace ponshare::oracle {

inline constexpr std::size_t kMaxPathNodes = 30;
inline constexpr std::size_t kMaxReplayOnus = 50;

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct OracleHop {
  FiberId fiber;
  bool upstream;
  friend bool operator==(const OracleHop&, const OracleHop&) = default;
};

struct OraclePath {
  std::vector<NodeId> nodes;  // source first, target last
  std::vector<OracleHop> hops;
};

// Every valid path from source to every other ONU, keyed by target. A path
// may not leave a passive RN in a different direction than it entered, may
// not visit a node twice (passive RNs count once per direction), and does not
// continue past an ONU. From an IC-ONU it also does not continue past the
// OLT. Throws SizeLimitError above kMaxPathNodes nodes and
// std::invalid_argument if source is not the OLT or an IC-ONU.
std::map<NodeId, std::vector<OraclePath>> enumerate_paths(const PonGraph& pon, NodeId source);

// Minimal hop count of every reachable (source, target ONU) pair, for
// sources = OLT and every IC-ONU. target == source is not included.
std::map<std::pair<NodeId, NodeId>, std::size_t> minimal_hops(const PonGraph& pon);

struct LedgerEntry {
  NodeId onu;
  NodeId source;
  bool self;          // the ONU's own ingress
  std::size_t hops;
  double amount;
};

struct ReplayResult {
  double p = 0.0;
  std::vector<double> ratio;  // per ONU, ascending id
  std::vector<LedgerEntry> ledger;
};

struct ReplayCapacity {
  double down = 10.0;
  double up = 2.5;
  double ic = 2.5;
};

// Step-by-step uniform-demand allocation over enumerate_paths alternatives.
// Throws SizeLimitError above kMaxReplayOnus ONUs.
ReplayResult replay_allocation(const PonGraph& pon, double load, const ReplayCapacity& cap);

}  // namespace ponshare::oracle

#endif  // PONSHARE_VERIFICATION_HPP_
