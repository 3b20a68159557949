// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <deque>
#include <string>

#include "ponshare/rng.hpp"
#include "ponshare/topology.hpp"

namespace ponshare {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

constexpr int kStages = 3;

}  // namespace

void GenParams::validate() const {
  if (g < 1) throw std::invalid_argument("g must be >= 1, got " + std::to_string(g));
  if (!is_probability(s)) throw std::invalid_argument("s must be in [0, 1]");
  if (!is_probability(ic_prob)) throw std::invalid_argument("r must be in [0, 1]");
  if (const auto* random = std::get_if<RandomActive>(&rn_policy)) {
    if (!is_probability(random->q)) throw std::invalid_argument("q must be in [0, 1]");
  }
}

PonGraph generate_pon(const GenParams& params) {
  params.validate();
  Rng rng(params.seed);

  std::vector<NodeKind> kinds{NodeKind::kOlt, NodeKind::kPassiveRn};
  std::vector<Fiber> fibers{{0, 1}};
  std::vector<int> stage_of{0, 1};

  std::deque<NodeId> pending{1};
  while (!pending.empty()) {
    const NodeId rn = pending.front();
    pending.pop_front();
    const int stage = stage_of[rn];
    for (int out = 0; out < params.g; ++out) {
      const NodeId child = static_cast<NodeId>(kinds.size());
      const bool branch = stage < kStages && rng.bernoulli(params.s);
      kinds.push_back(branch ? NodeKind::kPassiveRn : NodeKind::kOnu);
      stage_of.push_back(branch ? stage + 1 : 0);
      fibers.push_back({rn, child});
      if (branch) pending.push_back(child);
    }
  }

  for (NodeId id = 0; id < kinds.size(); ++id) {
    if (!is_rn(kinds[id])) continue;
    bool active = false;
    if (const auto* fixed = std::get_if<FixedStages>(&params.rn_policy)) {
      active = fixed->active[static_cast<std::size_t>(stage_of[id] - 1)];
    } else {
      active = rng.bernoulli(std::get<RandomActive>(params.rn_policy).q);
    }
    if (active) kinds[id] = NodeKind::kActiveRn;
  }

  for (NodeKind& k : kinds) {
    if (k == NodeKind::kOnu && rng.bernoulli(params.ic_prob)) k = NodeKind::kIcOnu;
  }

  return PonGraph(std::move(kinds), std::move(fibers));
}

ExpectedCounts expected_counts(int g, double s) {
  const double gd = g;
  const double gs = gd * s;
  return {gd * (1.0 - s + gs * (1.0 - s + gs)), 1.0 + gs * (1.0 + gs)};
}

}  // namespace ponshare
