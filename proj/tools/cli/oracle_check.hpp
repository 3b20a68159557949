// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_TOOLS_CLI_ORACLE_CHECK_HPP_
#define PONSHARE_TOOLS_CLI_ORACLE_CHECK_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ponshare/topology.hpp"

namespace ponshare::cli {

struct CrossCheckSummary {
  std::size_t pons = 0;
  std::size_t pairs = 0;             // (source, ONU) pairs compared
  std::size_t hop_mismatches = 0;
  std::size_t p_mismatches = 0;
  std::size_t ledger_mismatches = 0;
  double max_p_diff = 0.0;
  std::vector<std::string> failures;  // first few, human readable

  bool ok() const { return hop_mismatches == 0 && p_mismatches == 0 && ledger_mismatches == 0; }
};

// Random PON with at most max_nodes nodes: g in {2, 3}, s, r uniform on
// [0, 1], and either the fixed stage-2 policy or RandomActive with uniform q.
// Oversized draws are rejected and redrawn.
PonGraph random_small_pon(std::uint64_t seed, std::size_t max_nodes = 30);

// Compares pathing minimal hop counts and allocation results (p and the
// grant ledger) against the brute-force oracle on `count` random PONs.
CrossCheckSummary cross_check(std::size_t count, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace ponshare::cli

#endif  // PONSHARE_TOOLS_CLI_ORACLE_CHECK_HPP_
