// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "ponshare/pathing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ponshare {

namespace {

bool is_service_source(NodeKind k) { return k == NodeKind::kOlt || k == NodeKind::kIcOnu; }

// Refills tree in place so repeated searches reuse its buffers.
void search(const DirectedAccessGraph& graph, NodeId source, NodeKind source_kind,
            ShortestPathTree& tree, std::vector<VertexId>& queue) {
  const std::size_t nv = graph.vertex_count();
  tree.source = source;
  tree.root = graph.up_vertex(source);
  tree.parent.assign(nv, ShortestPathTree::kNoVertex);
  tree.parent_arc.assign(nv, ShortestPathTree::kNoVertex);
  tree.distance.assign(nv, ShortestPathTree::kUnreached);

  const bool from_ic = source_kind == NodeKind::kIcOnu;
  queue.clear();
  queue.push_back(tree.root);
  tree.distance[tree.root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    const NodeKind k = graph.vertex(v).kind;
    if (v != tree.root && (is_onu(k) || (from_ic && k == NodeKind::kOlt))) continue;
    for (ArcId a : graph.out_arcs(v)) {
      const VertexId w = graph.arc(a).to;
      if (tree.distance[w] != ShortestPathTree::kUnreached) continue;
      tree.distance[w] = tree.distance[v] + 1;
      tree.parent[w] = v;
      tree.parent_arc[w] = a;
      queue.push_back(w);
    }
  }
}

SourceKind source_kind_of(NodeId source, NodeId target, NodeKind kind) {
  if (source == target) return SourceKind::kSelf;
  return kind == NodeKind::kOlt ? SourceKind::kOlt : SourceKind::kIcOnu;
}

std::vector<NodeId> service_sources(const PonGraph& pon, bool sharing) {
  std::vector<NodeId> sources;
  for (NodeId id = 0; id < pon.node_count(); ++id) {
    const NodeKind k = pon.kind(id);
    if (k == NodeKind::kOlt || (sharing && k == NodeKind::kIcOnu)) sources.push_back(id);
  }
  return sources;
}

template <typename T>
void sort_by_hops(std::vector<T>& list) {
  // Sources are visited in ascending id, so a stable sort leaves ties in
  // source order.
  std::stable_sort(list.begin(), list.end(),
                   [](const T& a, const T& b) { return a.hop_count < b.hop_count; });
}

}  // namespace

std::span<const ArcId> DirectedAccessGraph::out_arcs(VertexId v) const {
  const std::uint32_t begin = out_offsets_.at(v);
  const std::uint32_t end = out_offsets_.at(v + 1);
  return std::span<const ArcId>(out_list_).subspan(begin, end - begin);
}

DirectedAccessGraph split_rns(const PonGraph& pon) {
  DirectedAccessGraph g;
  const std::size_t n = pon.node_count();
  g.up_of_node_.resize(n);
  g.down_of_node_.resize(n);
  g.vertices_.reserve(n + pon.rn_count());
  for (NodeId id = 0; id < n; ++id) {
    const NodeKind k = pon.kind(id);
    const auto next = static_cast<VertexId>(g.vertices_.size());
    if (k == NodeKind::kPassiveRn) {
      g.vertices_.push_back({id, k, VertexRole::kPassiveUp});
      g.vertices_.push_back({id, k, VertexRole::kPassiveDown});
      g.up_of_node_[id] = next;
      g.down_of_node_[id] = next + 1;
    } else {
      g.vertices_.push_back({id, k, VertexRole::kPlain});
      g.up_of_node_[id] = next;
      g.down_of_node_[id] = next;
    }
  }

  g.arcs_.reserve(2 * pon.fiber_count());
  for (FiberId f = 0; f < pon.fiber_count(); ++f) {
    const Fiber& fb = pon.fiber(f);
    g.arcs_.push_back({g.up_of_node_[fb.child], g.up_of_node_[fb.parent], f, Direction::kUpstream});
    g.arcs_.push_back(
        {g.down_of_node_[fb.parent], g.down_of_node_[fb.child], f, Direction::kDownstream});
  }

  const std::size_t nv = g.vertices_.size();
  g.out_offsets_.assign(nv + 1, 0);
  for (const Arc& a : g.arcs_) ++g.out_offsets_[a.from + 1];
  for (std::size_t v = 0; v < nv; ++v) g.out_offsets_[v + 1] += g.out_offsets_[v];
  g.out_list_.resize(g.arcs_.size());
  std::vector<std::uint32_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  for (ArcId a = 0; a < g.arcs_.size(); ++a) g.out_list_[cursor[g.arcs_[a].from]++] = a;
  for (std::size_t v = 0; v < nv; ++v) {
    auto first = g.out_list_.begin() + g.out_offsets_[v];
    auto last = g.out_list_.begin() + g.out_offsets_[v + 1];
    std::sort(first, last, [&g](ArcId a, ArcId b) { return g.arcs_[a].to < g.arcs_[b].to; });
  }
  return g;
}

ShortestPathTree shortest_path_tree(const DirectedAccessGraph& graph, NodeId source) {
  if (source >= graph.node_count()) {
    throw std::invalid_argument("source " + std::to_string(source) + " is not a node");
  }
  const NodeKind kind = graph.vertex(graph.up_vertex(source)).kind;
  if (!is_service_source(kind)) {
    throw std::invalid_argument("source " + std::to_string(source) +
                                " must be the OLT or an IC-ONU");
  }
  ShortestPathTree tree;
  std::vector<VertexId> queue;
  search(graph, source, kind, tree, queue);
  return tree;
}

std::optional<Alternative> trace(const DirectedAccessGraph& graph, const ShortestPathTree& tree,
                                 NodeId n) {
  const VertexId target = graph.down_vertex(n);
  if (!tree.reached(target)) return std::nullopt;

  Alternative alt;
  alt.source = tree.source;
  alt.kind = source_kind_of(tree.source, n, graph.vertex(tree.root).kind);
  alt.hop_count = tree.distance[target];
  alt.hops.reserve(alt.hop_count);
  for (VertexId v = target; v != tree.root; v = tree.parent[v]) {
    const Arc& a = graph.arc(tree.parent_arc[v]);
    alt.hops.push_back({a.fiber, a.dir});
  }
  std::reverse(alt.hops.begin(), alt.hops.end());
  return alt;
}

AlternativeMap find_alternatives(const PonGraph& pon) {
  const DirectedAccessGraph graph = split_rns(pon);
  const std::vector<NodeId> onus = pon.onus();
  AlternativeMap out;
  for (NodeId n : onus) out[n];

  for (NodeId source : service_sources(pon, true)) {
    const ShortestPathTree tree = shortest_path_tree(graph, source);
    for (NodeId n : onus) {
      if (auto alt = trace(graph, tree, n)) out[n].push_back(std::move(*alt));
    }
  }
  for (auto& [n, list] : out) sort_by_hops(list);
  return out;
}

RouteTable find_routes(const PonGraph& pon, bool sharing) {
  const DirectedAccessGraph graph = split_rns(pon);
  const std::vector<NodeId> onus = pon.onus();
  RouteTable table;
  table.by_node.resize(pon.node_count());

  ShortestPathTree tree;
  std::vector<VertexId> queue;
  for (NodeId source : service_sources(pon, sharing)) {
    const NodeKind kind = pon.kind(source);
    search(graph, source, kind, tree, queue);
    for (NodeId n : onus) {
      const VertexId target = graph.down_vertex(n);
      if (!tree.reached(target)) continue;
      Route r{source, source, tree.distance[target], source_kind_of(source, n, kind)};
      if (r.kind == SourceKind::kIcOnu) {
        // Walk back over the downstream tail; the turn is where it starts.
        for (VertexId v = target; v != tree.root; v = tree.parent[v]) {
          const Arc& a = graph.arc(tree.parent_arc[v]);
          if (a.dir != Direction::kDownstream) break;
          r.turn = pon.fiber(a.fiber).parent;
        }
      }
      table.by_node[n].push_back(r);
    }
  }
  for (auto& list : table.by_node) sort_by_hops(list);
  return table;
}

void append_route_hops(const PonGraph& pon, NodeId target, const Route& r,
                       std::vector<Hop>& out) {
  if (r.kind == SourceKind::kSelf) return;
  for (NodeId x = r.source; x != r.turn; x = pon.parent(x)) {
    out.push_back({pon.uplink(x), Direction::kUpstream});
  }
  const std::size_t down_begin = out.size();
  for (NodeId x = target; x != r.turn; x = pon.parent(x)) {
    out.push_back({pon.uplink(x), Direction::kDownstream});
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(down_begin), out.end());
}

}  // namespace ponshare
