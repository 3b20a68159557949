// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <string>

#include "ponshare/topology.hpp"

namespace ponshare {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw StructuralError("invalid PON: " + what);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

PonGraph::PonGraph(std::vector<NodeKind> kinds, std::vector<Fiber> fibers)
    : kinds_(std::move(kinds)), fibers_(std::move(fibers)) {
  const std::size_t n = kinds_.size();
  if (n == 0) fail("no nodes");
  if (fibers_.size() != n - 1) {
    fail("expected " + std::to_string(n - 1) + " edges for " +
         std::to_string(n) + " nodes, got " + std::to_string(fibers_.size()));
  }

  for (NodeId id = 0; id < n; ++id) {
    if (kinds_[id] == NodeKind::kOlt) {
      if (olt_ != kNoNode) fail("more than one OLT");
      olt_ = id;
    } else if (is_onu(kinds_[id])) {
      ++onu_count_;
    } else {
      ++rn_count_;
    }
  }
  if (olt_ == kNoNode) fail("no OLT");

  parent_.assign(n, kNoNode);
  uplink_.assign(n, kNoNode);
  std::vector<std::uint32_t> degree(n, 0);
  for (FiberId f = 0; f < fibers_.size(); ++f) {
    const auto [p, c] = fibers_[f];
    if (p >= n || c >= n) fail("edge " + std::to_string(f) + " names an unknown node");
    if (p == c) fail("self-loop at node " + std::to_string(p));
    if (parent_[c] != kNoNode) fail("node " + std::to_string(c) + " has two parents");
    if (c == olt_) fail("the OLT cannot be a child");
    parent_[c] = p;
    uplink_[c] = f;
    ++degree[p];
  }

  child_offsets_.assign(n + 1, 0);
  for (NodeId id = 0; id < n; ++id) child_offsets_[id + 1] = child_offsets_[id] + degree[id];
  child_list_.resize(fibers_.size());
  std::vector<std::uint32_t> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
  for (const Fiber& fb : fibers_) child_list_[cursor[fb.parent]++] = fb.child;

  for (NodeId id = 0; id < n; ++id) {
    const NodeKind k = kinds_[id];
    if (k == NodeKind::kOlt && degree[id] != 1) fail("the OLT must have exactly one child");
    if (is_onu(k) && degree[id] != 0) fail("ONU " + std::to_string(id) + " is not a leaf");
    if (is_rn(k) && degree[id] == 0) fail("RN " + std::to_string(id) + " has no children");
  }

  // Every node has one parent and there are n-1 edges, so the only failure
  // left is a cycle detached from the OLT. Walk from the root to find it.
  std::vector<NodeId> stack{olt_};
  std::size_t seen = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    ++seen;
    for (NodeId c : children(id)) stack.push_back(c);
    if (seen > n) break;
  }
  if (seen != n) fail("not every node is reachable from the OLT");
}

std::span<const NodeId> PonGraph::children(NodeId id) const {
  const std::uint32_t begin = child_offsets_.at(id);
  const std::uint32_t end = child_offsets_.at(id + 1);
  return std::span<const NodeId>(child_list_).subspan(begin, end - begin);
}

std::size_t PonGraph::depth(NodeId id) const {
  std::size_t d = 0;
  for (NodeId x = id; parent_.at(x) != kNoNode; x = parent_[x]) ++d;
  return d;
}

std::vector<NodeId> PonGraph::onus() const {
  std::vector<NodeId> out;
  out.reserve(onu_count_);
  for (NodeId id = 0; id < kinds_.size(); ++id) {
    if (is_onu(kinds_[id])) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> PonGraph::ic_onus() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < kinds_.size(); ++id) {
    if (kinds_[id] == NodeKind::kIcOnu) out.push_back(id);
  }
  return out;
}

void PonGraph::set_ic_capable(NodeId onu, bool ic) {
  if (!is_onu(kind(onu))) {
    throw std::invalid_argument("node " + std::to_string(onu) + " is not an ONU");
  }
  kinds_[onu] = ic ? NodeKind::kIcOnu : NodeKind::kOnu;
}

void PonGraph::set_rn_active(NodeId rn, bool active) {
  if (!is_rn(kind(rn))) {
    throw std::invalid_argument("node " + std::to_string(rn) + " is not an RN");
  }
  kinds_[rn] = active ? NodeKind::kActiveRn : NodeKind::kPassiveRn;
}

}  // namespace ponshare
