// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "ponshare/allocation.hpp"
#include "ponshare/pathing.hpp"
#include "ponshare/rng.hpp"
#include "ponshare/verification.hpp"

namespace ponshare {
namespace {

const std::string kFixtures = PONSHARE_FIXTURE_DIR;
constexpr double kTol = 1e-9;

PonGraph random_pon(std::uint64_t seed, int g) {
  Rng rng(seed);
  GenParams p;
  p.g = g;
  p.s = rng.uniform();
  p.ic_prob = rng.uniform();
  if (rng.bernoulli(0.5)) {
    p.rn_policy = RandomActive{rng.uniform()};
  }
  p.seed = seed;
  return generate_pon(p);
}

TEST(CapacityConfig, Validation) {
  EXPECT_NO_THROW(CapacityConfig{}.validate());
  EXPECT_NO_THROW((CapacityConfig{0.0, 0.0, 0.0}.validate()));
  EXPECT_THROW((CapacityConfig{-1.0, 2.5, 2.5}.validate()), std::invalid_argument);
  EXPECT_THROW((CapacityConfig{10.0, INFINITY, 2.5}.validate()), std::invalid_argument);
}

TEST(DemandProfile, Uniform) {
  const PonGraph pon = load_pon(kFixtures + "/toy3.pon");
  const DemandProfile d = DemandProfile::uniform(pon, 10.0, 1.5);
  ASSERT_EQ(d.per_onu().size(), 3u);
  for (const auto& [n, b] : d.per_onu()) EXPECT_DOUBLE_EQ(b, 5.0);
  EXPECT_THROW(DemandProfile({{2, -1.0}}), std::invalid_argument);
}

TEST(GrantDb, SingleBottleneck) {
  const PonGraph pon = load_pon(kFixtures + "/minimal.pon");
  const AlternativeMap alts = find_alternatives(pon);
  ResidualState state(pon, CapacityConfig{});
  EXPECT_DOUBLE_EQ(grant_db(state, 2, 4.0, alts.at(2)), 4.0);
  EXPECT_DOUBLE_EQ(state.fiber(0, Direction::kDownstream), 6.0);
  EXPECT_DOUBLE_EQ(state.fiber(0, Direction::kUpstream), 2.5);
}

TEST(GrantDb, SplitsAcrossAlternatives) {
  // ONU 3 of the toy PON: OLT over fibers 0,2; IC-ONU 2 over fiber 1 up, 2 down.
  const PonGraph pon = load_pon(kFixtures + "/toy3.pon");
  const AlternativeMap alts = find_alternatives(pon);
  const auto& list = alts.at(3);
  ASSERT_EQ(list.size(), 2u);
  ASSERT_EQ(list[0].kind, SourceKind::kOlt);
  ASSERT_EQ(list[1].kind, SourceKind::kIcOnu);

  ResidualState state(pon, CapacityConfig{});
  const std::vector<Hop> feeder{{0, Direction::kDownstream}};
  state.consume(feeder, kNoNode, 7.0);  // feeder residual 3

  EXPECT_NEAR(grant_db(state, 3, 4.0, list), 4.0, kTol);
  EXPECT_NEAR(state.fiber(0, Direction::kDownstream), 0.0, kTol);
  EXPECT_NEAR(state.ingress(2), 1.5, kTol);
  EXPECT_NEAR(state.fiber(1, Direction::kUpstream), 1.5, kTol);
  EXPECT_NEAR(state.fiber(2, Direction::kDownstream), 6.0, kTol);
}

TEST(GrantDb, ExhaustedGrantsZero) {
  const PonGraph pon = load_pon(kFixtures + "/toy3.pon");
  const AlternativeMap alts = find_alternatives(pon);
  ResidualState state(pon, CapacityConfig{10.0, 2.5, 0.0});
  state.consume(std::vector<Hop>{{0, Direction::kDownstream}}, kNoNode, 10.0);
  EXPECT_DOUBLE_EQ(grant_db(state, 3, 4.0, alts.at(3)), 0.0);
  EXPECT_DOUBLE_EQ(grant_db(state, 2, 4.0, alts.at(2)), 0.0);
}

TEST(ResidualState, RejectsOverdraw) {
  const PonGraph pon = load_pon(kFixtures + "/toy3.pon");
  ResidualState state(pon, CapacityConfig{});
  EXPECT_THROW(state.consume(std::vector<Hop>{{1, Direction::kUpstream}}, kNoNode, 3.0),
               std::invalid_argument);
  EXPECT_THROW(state.consume({}, 2, 2.6), std::invalid_argument);
  EXPECT_DOUBLE_EQ(state.ingress(3), 0.0);
}

// Hand replay of the toy PON at l = 2, b = 20/3:
//   ONU 2 (SELF 2.5, then OLT 25/6) -> ratio 1, feeder left 35/6
//   ONU 3 (OLT 35/6, IC ingress empty) -> ratio 7/8
//   ONU 4 (feeder and ingress empty) -> ratio 0
// p = (1 + 7/8 + 0) / 3 = 0.625
TEST(CalculatePerformance, ToyPonHandReplay) {
  const PonGraph pon = load_pon(kFixtures + "/toy3.pon");
  const PerformanceReport rep = calculate_performance(pon, 2.0, CapacityConfig{});
  EXPECT_NEAR(rep.p, 0.625, kTol);
  ASSERT_EQ(rep.onus.size(), 3u);
  EXPECT_NEAR(rep.onus[0].ratio, 1.0, kTol);
  EXPECT_NEAR(rep.onus[1].ratio, 0.875, kTol);
  EXPECT_NEAR(rep.onus[2].ratio, 0.0, kTol);
  EXPECT_EQ(rep.onu_count, 3u);
  EXPECT_DOUBLE_EQ(rep.load, 2.0);

  const auto replay = oracle::replay_allocation(pon, 2.0, {});
  EXPECT_NEAR(replay.p, rep.p, kTol);
}

TEST(CalculatePerformance, LedgerMatchesReplay) {
  for (const char* name : {"toy3.pon", "detour.pon", "minimal.pon"}) {
    const PonGraph pon = load_pon(kFixtures + "/" + name);
    const PerformanceReport rep = calculate_performance(pon, 2.0, CapacityConfig{},
                                                        EvalOptions{true, true});
    const auto replay = oracle::replay_allocation(pon, 2.0, {});
    ASSERT_EQ(rep.ledger.size(), replay.ledger.size()) << name;
    for (std::size_t i = 0; i < rep.ledger.size(); ++i) {
      EXPECT_EQ(rep.ledger[i].onu, replay.ledger[i].onu);
      EXPECT_EQ(rep.ledger[i].source, replay.ledger[i].source);
      EXPECT_EQ(rep.ledger[i].kind == SourceKind::kSelf, replay.ledger[i].self);
      EXPECT_EQ(rep.ledger[i].hop_count, replay.ledger[i].hops);
      EXPECT_NEAR(rep.ledger[i].amount, replay.ledger[i].amount, kTol);
    }
    EXPECT_NEAR(rep.p, replay.p, kTol) << name;
  }
}

TEST(CalculatePerformance, NoIcGivesInverseLoad) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PonGraph pon = random_pon(seed, 4 + static_cast<int>(seed % 5));
    for (NodeId n : pon.onus()) pon.set_ic_capable(n, false);
    for (int i = 10; i <= 20; ++i) {
      const double l = i / 10.0;
      EXPECT_NEAR(calculate_performance(pon, l, CapacityConfig{}).p, 1.0 / l, kTol);
    }
  }
}

TEST(CalculatePerformance, FullLoadIsAlwaysServed) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PonGraph pon = random_pon(seed, 5);
    EXPECT_NEAR(calculate_performance(pon, 1.0, CapacityConfig{}).p, 1.0, kTol);
  }
}

TEST(CalculatePerformance, SharingDisabledOrNoIngress) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PonGraph pon = random_pon(seed, 4);
    for (double l : {0.5, 1.0, 1.3, 2.0}) {
      const double base = std::min(1.0, 1.0 / l);
      EXPECT_NEAR(calculate_performance(pon, l, CapacityConfig{}, EvalOptions{false, false}).p,
                  base, kTol);
      EXPECT_NEAR(calculate_performance(pon, l, CapacityConfig{10.0, 2.5, 0.0}).p, base, kTol);
      // Sharing never lowers the total granted below the OLT-only value.
      const auto with = calculate_performance(pon, l, CapacityConfig{});
      EXPECT_GE(with.p, base - kTol);
    }
  }
}

TEST(CalculatePerformance, ZeroCapacityGivesZero) {
  const PonGraph pon = load_pon(kFixtures + "/detour.pon");
  const DemandProfile d({{4, 1.0}, {5, 1.0}});
  EXPECT_DOUBLE_EQ(calculate_performance(pon, 1.0, CapacityConfig{0.0, 0.0, 0.0}, d).p, 0.0);
}

TEST(CalculatePerformance, NonUniformDemand) {
  // ONU 5 asks for the whole feeder; ONU 4 covers itself from its ingress.
  const PonGraph pon = load_pon(kFixtures + "/detour.pon");
  const DemandProfile d({{4, 2.0}, {5, 10.0}});
  const PerformanceReport rep = calculate_performance(pon, 1.0, CapacityConfig{}, d);
  EXPECT_NEAR(rep.onus[0].granted, 2.0, kTol);
  EXPECT_NEAR(rep.onus[1].granted, 10.0, kTol);
  EXPECT_NEAR(rep.p, 1.0, kTol);
}

TEST(CalculatePerformance, DemandMismatchIsStructuralError) {
  const PonGraph pon = load_pon(kFixtures + "/detour.pon");
  EXPECT_THROW(calculate_performance(pon, 1.0, CapacityConfig{}, DemandProfile({{4, 1.0}})),
               StructuralError);
  EXPECT_THROW(calculate_performance(pon, 1.0, CapacityConfig{},
                                     DemandProfile({{4, 1.0}, {3, 1.0}})),
               StructuralError);
}

TEST(CalculatePerformance, BoundsAndPurity) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const PonGraph pon = random_pon(seed, 4);
    const double l = 1.0 + (seed % 11) / 10.0;
    const auto a = calculate_performance(pon, l, CapacityConfig{});
    const auto b = calculate_performance(pon, l, CapacityConfig{});
    EXPECT_EQ(a.p, b.p);
    double total = 0.0;
    double mean = 0.0;
    for (const auto& o : a.onus) {
      EXPECT_GE(o.ratio, 0.0);
      EXPECT_LE(o.ratio, 1.0);
      EXPECT_LE(o.granted, o.requested + kTol);
      total += o.granted;
      mean += o.ratio;
    }
    EXPECT_LE(total, 10.0 * l + kTol);
    EXPECT_NEAR(mean / static_cast<double>(a.onus.size()), a.p, kTol);
  }
}

// Serving find_alternatives lists through grant_db in the documented order
// must reproduce calculate_performance.
TEST(CalculatePerformance, EqualsManualGrantLoop) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const PonGraph pon = random_pon(seed, 3);
    const double l = 2.0;
    const AlternativeMap alts = find_alternatives(pon);
    std::vector<NodeId> order = pon.onus();
    std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
      return alts.at(x).size() < alts.at(y).size();
    });
    ResidualState state(pon, CapacityConfig{});
    const double b = 10.0 * l / static_cast<double>(pon.onu_count());
    double sum = 0.0;
    for (NodeId n : order) sum += std::min(1.0, grant_db(state, n, b, alts.at(n)) / b);
    EXPECT_NEAR(sum / static_cast<double>(pon.onu_count()),
                calculate_performance(pon, l, CapacityConfig{}).p, kTol)
        << "seed " << seed;
  }
}

TEST(CalculatePerformance, AllIcWithEnoughIngressSaturates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PonGraph pon = random_pon(seed, 8);
    for (NodeId n : pon.onus()) pon.set_ic_capable(n, true);
    const PerformanceReport rep = calculate_performance(pon, 2.0, CapacityConfig{});
    const double b = 20.0 / static_cast<double>(pon.onu_count());
    if (b <= 2.5) {
      EXPECT_EQ(rep.p, 1.0);
    }
  }
}

TEST(CalculatePerformance, NoPeerGrantsWithoutActiveRns) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams params{8, 0.4, RandomActive{0.0}, 0.3, seed};
    const PonGraph pon = generate_pon(params);
    EvalOptions opts;
    opts.record_ledger = true;
    const PerformanceReport rep = calculate_performance(pon, 2.0, CapacityConfig{}, opts);
    for (const GrantRecord& g : rep.ledger) {
      EXPECT_NE(g.kind, SourceKind::kIcOnu) << "seed " << seed;
      if (g.kind == SourceKind::kSelf) EXPECT_EQ(g.source, g.onu);
    }
  }
}

}  // namespace
}  // namespace ponshare
