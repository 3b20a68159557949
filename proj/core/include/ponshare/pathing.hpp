// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_PATHING_HPP_
#define PONSHARE_PATHING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ponshare/topology.hpp"

namespace ponshare {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;

enum class Direction : std::uint8_t { kUpstream, kDownstream };

enum class VertexRole : std::uint8_t {
  kPlain,        // OLT, active RN or ONU: both directions meet here
  kPassiveUp,    // upstream half of a passive RN
  kPassiveDown,  // downstream half of a passive RN
};

struct Vertex {
  NodeId node;
  NodeKind kind;
  VertexRole role;
};

struct Arc {
  VertexId from;
  VertexId to;
  FiberId fiber;
  Direction dir;
};

// The PON with every passive RN split in two, so that a walk entering a
// passive RN upstream can only leave it upstream, and likewise downstream.
// Turn-around is only possible at plain vertices.
//
// Vertex ids follow node ids; a passive RN contributes its up vertex followed
// by its down vertex. Each fiber yields one upstream and one downstream arc.
class DirectedAccessGraph {
 public:
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  std::size_t node_count() const { return up_of_node_.size(); }

  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  std::span<const Arc> arcs() const { return arcs_; }
  // Outgoing arc ids of v, ordered by ascending head vertex.
  std::span<const ArcId> out_arcs(VertexId v) const;

  // Vertex entered by upstream arcs (and left by them) for node n.
  VertexId up_vertex(NodeId n) const { return up_of_node_.at(n); }
  VertexId down_vertex(NodeId n) const { return down_of_node_.at(n); }

 private:
  friend DirectedAccessGraph split_rns(const PonGraph& pon);

  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<ArcId> out_list_;
  std::vector<VertexId> up_of_node_;
  std::vector<VertexId> down_of_node_;
};

DirectedAccessGraph split_rns(const PonGraph& pon);

// BFS tree over the split graph, rooted at a service source.
struct ShortestPathTree {
  static constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;
  static constexpr VertexId kNoVertex = 0xFFFFFFFFu;

  NodeId source = kNoNode;
  VertexId root = kNoVertex;
  std::vector<VertexId> parent;
  std::vector<ArcId> parent_arc;
  std::vector<std::uint32_t> distance;

  bool reached(VertexId v) const { return distance.at(v) != kUnreached; }
};

// Breadth-first search by hop count. Neighbours are expanded in ascending
// vertex order. ONU vertices other than the source are never expanded; when
// the source is an IC-ONU the OLT is not expanded either, since turning there
// would only duplicate what the OLT serves directly.
//
// Throws std::invalid_argument unless source is the OLT or an IC-ONU.
ShortestPathTree shortest_path_tree(const DirectedAccessGraph& graph, NodeId source);

struct Hop {
  FiberId fiber;
  Direction dir;
  friend bool operator==(const Hop&, const Hop&) = default;
};

enum class SourceKind : std::uint8_t {
  kOlt,
  kIcOnu,  // diverted through another IC-ONU's ingress
  kSelf,   // the target IC-ONU's own ingress, no fibers used
};

// One service path to an ONU.
struct Alternative {
  NodeId source = kNoNode;
  SourceKind kind = SourceKind::kOlt;
  std::vector<Hop> hops;
  std::uint32_t hop_count = 0;

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

// Path from the tree's source to ONU n, or nullopt when n is unreachable.
// Tracing the source itself yields its SELF alternative.
std::optional<Alternative> trace(const DirectedAccessGraph& graph,
                                 const ShortestPathTree& tree, NodeId n);

using AlternativeMap = std::map<NodeId, std::vector<Alternative>>;

// Alternatives of every ONU: one per reachable service source, plus SELF for
// IC-ONUs. Each list is sorted by (hop_count, source). Every ONU has the OLT
// alternative.
AlternativeMap find_alternatives(const PonGraph& pon);

// Compact form of an Alternative. In a tree the path is fully determined by
// its endpoints and the node where it turns from upstream to downstream, so
// the hop list can be rebuilt on demand (append_route_hops). turn is the
// source itself for OLT and SELF routes.
struct Route {
  NodeId source = kNoNode;
  NodeId turn = kNoNode;
  std::uint32_t hop_count = 0;
  SourceKind kind = SourceKind::kOlt;

  friend bool operator==(const Route&, const Route&) = default;
};

// Routes per node id (empty lists for non-ONUs), same order as
// find_alternatives. With sharing == false only the OLT routes are kept.
struct RouteTable {
  std::vector<std::vector<Route>> by_node;

  std::span<const Route> of(NodeId onu) const { return by_node.at(onu); }
};

RouteTable find_routes(const PonGraph& pon, bool sharing = true);

// Appends the hops of route r to target onto out.
void append_route_hops(const PonGraph& pon, NodeId target, const Route& r,
                       std::vector<Hop>& out);

}  // namespace ponshare

#endif  // PONSHARE_PATHING_HPP_
