// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "cli/oracle_check.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "ponshare/allocation.hpp"
#include "ponshare/pathing.hpp"
#include "ponshare/rng.hpp"
#include "ponshare/verification.hpp"

namespace ponshare::cli {

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

void note(CrossCheckSummary& sum, std::uint64_t pon_seed, const std::string& what) {
  if (sum.failures.size() < kMaxReportedFailures) {
    std::ostringstream os;
    os << "pon seed " << pon_seed << ": " << what;
    sum.failures.push_back(os.str());
  }
}

}  // namespace

PonGraph random_small_pon(std::uint64_t seed, std::size_t max_nodes) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(mix_seed({seed, attempt}));
    GenParams params;
    params.g = rng.bernoulli(0.5) ? 2 : 3;
    params.s = rng.uniform();
    params.ic_prob = rng.uniform();
    if (rng.bernoulli(0.5)) {
      params.rn_policy = FixedStages{};
    } else {
      params.rn_policy = RandomActive{rng.uniform()};
    }
    params.seed = rng.next();
    PonGraph pon = generate_pon(params);
    if (pon.node_count() <= max_nodes) return pon;
  }
}

CrossCheckSummary cross_check(std::size_t count, std::uint64_t seed, double tolerance) {
  CrossCheckSummary sum;
  const CapacityConfig cfg;
  const oracle::ReplayCapacity cap{cfg.down, cfg.up, cfg.ic};
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t pon_seed = mix_seed({seed, i});
    const PonGraph pon = random_small_pon(pon_seed);
    ++sum.pons;

    std::map<std::pair<NodeId, NodeId>, std::size_t> main_hops;
    for (const auto& [n, alts] : find_alternatives(pon)) {
      for (const Alternative& a : alts) {
        if (a.kind != SourceKind::kSelf) main_hops[{a.source, n}] = a.hop_count;
      }
    }
    const auto oracle_hops = oracle::minimal_hops(pon);
    sum.pairs += oracle_hops.size();
    if (main_hops != oracle_hops) {
      ++sum.hop_mismatches;
      note(sum, pon_seed, "minimal hop counts differ from the enumeration oracle");
    }

    // Loads 1.0, 1.1, ..., 2.0 in rotation.
    const double load = static_cast<double>(10 + i % 11) / 10.0;
    const PerformanceReport report =
        calculate_performance(pon, load, cfg, EvalOptions{.sharing = true, .record_ledger = true});
    const oracle::ReplayResult replay = oracle::replay_allocation(pon, load, cap);
    const double diff = std::abs(report.p - replay.p);
    sum.max_p_diff = std::max(sum.max_p_diff, diff);
    if (!(diff <= tolerance)) {
      ++sum.p_mismatches;
      note(sum, pon_seed, "p " + std::to_string(report.p) + " vs oracle " + std::to_string(replay.p));
    }

    bool same = report.ledger.size() == replay.ledger.size();
    for (std::size_t k = 0; same && k < report.ledger.size(); ++k) {
      const GrantRecord& a = report.ledger[k];
      const oracle::LedgerEntry& b = replay.ledger[k];
      same = a.onu == b.onu && a.source == b.source && (a.kind == SourceKind::kSelf) == b.self &&
             a.hop_count == b.hops && std::abs(a.amount - b.amount) <= tolerance;
    }
    if (!same) {
      ++sum.ledger_mismatches;
      note(sum, pon_seed, "grant ledger differs from the replay");
    }
  }
  return sum;
}

}  // namespace ponshare::cli
