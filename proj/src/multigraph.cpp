#include "kecss/multigraph.hpp"

#include <algorithm>
#include <stdexcept>

#include "kecss/errors.hpp"

namespace kecss {

Cut::Cut(std::vector<NodeId> m) : members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool Cut::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

namespace {

// Disjoint or nested, assuming sorted inputs.
bool laminar_pair(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(inter));
  if (inter.empty()) return true;
  return inter.size() == a.size() || inter.size() == b.size();
}

}  // namespace

bool ContractionForest::admits(const std::vector<NodeId>& s) const {
  for (const Entry& e : entries_) {
    if (!laminar_pair(e.original_nodes, s)) return false;
  }
  return true;
}

void ContractionForest::record(std::vector<NodeId> s, NodeId merged_node,
                               int iteration, int original_node_count) {
  std::sort(s.begin(), s.end());
  if (!admits(s)) {
    throw InvariantError("contraction forest would lose laminarity");
  }
  if (entries_.size() + 1 >
      static_cast<size_t>(2 * original_node_count - 1)) {
    throw InvariantError("contraction forest exceeds the 2n-1 size bound");
  }
  entries_.push_back(Entry{std::move(s), merged_node, iteration});
}

bool ContractionForest::is_laminar() const {
  for (size_t i = 0; i < entries_.size(); ++i) {
    for (size_t j = i + 1; j < entries_.size(); ++j) {
      if (!laminar_pair(entries_[i].original_nodes,
                        entries_[j].original_nodes)) {
        return false;
      }
    }
  }
  return true;
}

MultiGraph::MultiGraph(int n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  nodes_.resize(n);
  preimage_.resize(n);
  alive_.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    nodes_[i] = i;
    preimage_[i] = {i};
  }
  original_nodes_ = n;
  next_node_ = n;
}

NodeId MultiGraph::add_node() {
  NodeId v = next_node_++;
  nodes_.push_back(v);
  preimage_.push_back({v});
  alive_.push_back(1);
  ++original_nodes_;
  return v;
}

EdgeId MultiGraph::add_edge(NodeId u, NodeId v, Rational cost) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (!node_alive(u) || !node_alive(v)) {
    throw std::invalid_argument("edge endpoint is not a live node");
  }
  if (cost < 0) throw std::invalid_argument("edge costs must be nonnegative");
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{id, u, v, std::move(cost), false});
  return id;
}

bool MultiGraph::node_alive(NodeId v) const {
  return v >= 0 && v < next_node_ && alive_[v];
}

int MultiGraph::edge_count() const {
  int n = 0;
  for (const Edge& e : edges_) {
    if (!e.internal) ++n;
  }
  return n;
}

const Edge& MultiGraph::edge(EdgeId e) const {
  if (e < 0 || e >= static_cast<EdgeId>(edges_.size())) {
    throw std::invalid_argument("unknown edge id");
  }
  return edges_[e];
}

std::vector<EdgeId> MultiGraph::live_edge_ids() const {
  std::vector<EdgeId> ids;
  for (const Edge& e : edges_) {
    if (!e.internal) ids.push_back(e.id);
  }
  return ids;
}

std::vector<EdgeId> MultiGraph::internalized_ids() const {
  std::vector<EdgeId> ids;
  for (const Edge& e : edges_) {
    if (e.internal) ids.push_back(e.id);
  }
  return ids;
}

int MultiGraph::cut_degree(const std::vector<EdgeId>& subset,
                           const Cut& s) const {
  std::vector<char> in(next_node_, 0);
  for (NodeId v : s.members) {
    if (v >= 0 && v < next_node_) in[v] = 1;
  }
  int count = 0;
  for (EdgeId id : subset) {
    const Edge& e = edge(id);
    if (e.internal) continue;
    if (in[e.u] != in[e.v]) ++count;
  }
  return count;
}

int MultiGraph::pair_degree(const std::vector<EdgeId>& subset, NodeId u,
                            NodeId v) const {
  if (u == v) throw std::invalid_argument("pair_degree needs distinct nodes");
  if (!node_alive(u) || !node_alive(v)) {
    throw std::invalid_argument("pair_degree needs live nodes");
  }
  int count = 0;
  for (EdgeId id : subset) {
    const Edge& e = edge(id);
    if (e.internal) continue;
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) ++count;
  }
  return count;
}

std::vector<EdgeId> MultiGraph::pair_edges(const std::vector<EdgeId>& subset,
                                           NodeId u, NodeId v) const {
  std::vector<EdgeId> out;
  for (EdgeId id : subset) {
    const Edge& e = edge(id);
    if (e.internal) continue;
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> MultiGraph::boundary(const std::vector<EdgeId>& subset,
                                         const Cut& s) const {
  std::vector<char> in(next_node_, 0);
  for (NodeId v : s.members) {
    if (v >= 0 && v < next_node_) in[v] = 1;
  }
  std::vector<EdgeId> out;
  for (EdgeId id : subset) {
    const Edge& e = edge(id);
    if (e.internal) continue;
    if (in[e.u] != in[e.v]) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void MultiGraph::validate_cut(const Cut& c) const {
  if (c.members.empty()) throw std::invalid_argument("cut is empty");
  if (static_cast<int>(c.members.size()) >= node_count()) {
    throw std::invalid_argument("cut must be a proper subset of the nodes");
  }
  for (NodeId v : c.members) {
    if (!node_alive(v)) throw std::invalid_argument("cut has a dead node id");
  }
}

NodeId MultiGraph::contract(const Cut& c, ContractionForest& forest,
                            int iteration) {
  validate_cut(c);

  std::vector<NodeId> pre = preimage_of_cut(c);

  std::vector<char> in(next_node_, 0);
  for (NodeId v : c.members) in[v] = 1;

  NodeId merged = next_node_++;
  alive_.push_back(1);
  preimage_.push_back(pre);

  for (NodeId v : c.members) alive_[v] = 0;
  std::vector<NodeId> remaining;
  remaining.reserve(nodes_.size() - c.members.size() + 1);
  for (NodeId v : nodes_) {
    if (!in[v]) remaining.push_back(v);
  }
  remaining.push_back(merged);
  nodes_ = std::move(remaining);

  for (Edge& e : edges_) {
    if (e.internal) continue;
    bool iu = in[e.u], iv = in[e.v];
    if (iu && iv) {
      e.internal = true;
      e.u = e.v = merged;
    } else if (iu) {
      e.u = merged;
    } else if (iv) {
      e.v = merged;
    }
  }

  forest.record(pre, merged, iteration, original_nodes_);
  return merged;
}

const std::vector<NodeId>& MultiGraph::preimage(NodeId v) const {
  if (v < 0 || v >= next_node_) throw std::invalid_argument("unknown node id");
  return preimage_[v];
}

std::vector<NodeId> MultiGraph::preimage_of_cut(const Cut& c) const {
  std::vector<NodeId> pre;
  for (NodeId v : c.members) {
    const auto& p = preimage(v);
    pre.insert(pre.end(), p.begin(), p.end());
  }
  std::sort(pre.begin(), pre.end());
  return pre;
}

Rational MultiGraph::cost_of(const std::vector<EdgeId>& subset) const {
  Rational total = 0;
  for (EdgeId id : subset) total += edge(id).cost;
  return total;
}

Cut MultiGraph::complement(const Cut& c) const {
  std::vector<NodeId> rest;
  for (NodeId v : nodes_) {
    if (!c.contains(v)) rest.push_back(v);
  }
  return Cut(std::move(rest));
}

}  // namespace kecss
