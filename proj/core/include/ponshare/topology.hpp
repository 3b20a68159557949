// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_TOPOLOGY_HPP_
#define PONSHARE_TOPOLOGY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ponshare {

using NodeId = std::uint32_t;
using FiberId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t {
  kOlt,
  kPassiveRn,
  kActiveRn,
  kOnu,    // NIC-ONU
  kIcOnu,  // ONU with an interoperator ingress
};

constexpr bool is_onu(NodeKind k) {
  return k == NodeKind::kOnu || k == NodeKind::kIcOnu;
}
constexpr bool is_rn(NodeKind k) {
  return k == NodeKind::kPassiveRn || k == NodeKind::kActiveRn;
}

// Thrown when a node/edge set does not form a valid PON tree.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_pon on malformed text. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A fiber, oriented parent -> child. Downstream is the parent-to-child sense.
struct Fiber {
  NodeId parent;
  NodeId child;
  friend bool operator==(const Fiber&, const Fiber&) = default;
};

// Rooted tree of one operator's PON: the OLT, remote nodes, and ONUs.
//
// Node ids are dense, 0..node_count()-1. Fiber ids index fibers() in the
// order the edges were given. The constructor validates the tree invariants
// and throws StructuralError on any violation:
//   - exactly one OLT, with no parent and exactly one child;
//   - every other node has exactly one parent;
//   - every node is reachable from the OLT;
//   - ONUs are leaves and RNs have at least one child.
class PonGraph {
 public:
  PonGraph(std::vector<NodeKind> kinds, std::vector<Fiber> fibers);

  std::size_t node_count() const { return kinds_.size(); }
  std::size_t fiber_count() const { return fibers_.size(); }

  NodeKind kind(NodeId id) const { return kinds_.at(id); }
  std::span<const NodeKind> kinds() const { return kinds_; }
  std::span<const Fiber> fibers() const { return fibers_; }
  const Fiber& fiber(FiberId f) const { return fibers_.at(f); }

  NodeId olt() const { return olt_; }
  NodeId parent(NodeId id) const { return parent_.at(id); }
  // Fiber from id to its parent; kNoNode for the OLT.
  FiberId uplink(NodeId id) const { return uplink_.at(id); }
  std::span<const NodeId> children(NodeId id) const;
  // Number of fibers between id and the OLT.
  std::size_t depth(NodeId id) const;

  std::size_t onu_count() const { return onu_count_; }
  std::size_t rn_count() const { return rn_count_; }
  // ONU ids in ascending order.
  std::vector<NodeId> onus() const;
  std::vector<NodeId> ic_onus() const;

  // Toggle the IC capability of an ONU / the activity of an RN.
  // Throw std::invalid_argument when the node has the wrong kind.
  void set_ic_capable(NodeId onu, bool ic);
  void set_rn_active(NodeId rn, bool active);

  friend bool operator==(const PonGraph& a, const PonGraph& b) {
    return a.kinds_ == b.kinds_ && a.fibers_ == b.fibers_;
  }

 private:
  std::vector<NodeKind> kinds_;
  std::vector<Fiber> fibers_;
  std::vector<NodeId> parent_;
  std::vector<FiberId> uplink_;
  // Children in fiber order, CSR layout.
  std::vector<std::uint32_t> child_offsets_;
  std::vector<NodeId> child_list_;
  NodeId olt_ = kNoNode;
  std::size_t onu_count_ = 0;
  std::size_t rn_count_ = 0;
};

// Active flag per stage (index 0 = stage 1). The default places active RNs at
// stage 2 only.
struct FixedStages {
  std::array<bool, 3> active{false, true, false};
};

// Every RN independently active with probability q.
struct RandomActive {
  double q = 0.0;
};

using RnPolicy = std::variant<FixedStages, RandomActive>;

// Parameters of the random three-stage PON.
struct GenParams {
  int g = 32;            // splitter outputs per RN
  double s = 0.3;        // probability an output of a stage 1/2 RN feeds an RN
  RnPolicy rn_policy = FixedStages{};
  double ic_prob = 0.0;  // probability an ONU is IC-capable
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless g >= 1 and s, r, q are in [0, 1].
  void validate() const;
};

// Draws a PON. Ids are assigned in breadth-first creation order (OLT = 0,
// stage-1 RN = 1). The random stream is consumed in three passes: one draw
// per stage 1/2 splitter output, then one activity draw per RN in id order
// (RandomActive only), then one IC draw per ONU in id order.
PonGraph generate_pon(const GenParams& params);

struct ExpectedCounts {
  double onus;  // E[N] = g(1 - s + gs(1 - s + gs))
  double rns;   // E[R] = 1 + gs(1 + gs)
};

ExpectedCounts expected_counts(int g, double s);

// Line-oriented text form:
//   pon 1
//   node <id> olt|prn|arn|onu|ic-onu
//   edge <parent-id> <child-id>
// '#' starts a comment. serialize_pon writes nodes in id order, then edges in
// fiber order.
std::string serialize_pon(const PonGraph& pon);
PonGraph parse_pon(std::string_view text);

PonGraph load_pon(const std::string& path);
void save_pon(const PonGraph& pon, const std::string& path);

std::string_view kind_token(NodeKind kind);

}  // namespace ponshare

#endif  // PONSHARE_TOPOLOGY_HPP_
