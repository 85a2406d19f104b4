#pragma once

#include <vector>

#include "kecss/rational.hpp"

namespace kecss {

using NodeId = int;
using EdgeId = int;

// Edge ids are stable for the lifetime of a graph: contractions remap the
// endpoints but never renumber. An edge whose endpoints merge becomes
// internal; it stays on record but crosses no cut.
struct Edge {
  EdgeId id = -1;
  NodeId u = -1;
  NodeId v = -1;
  Rational cost;
  bool internal = false;
};

// Nonempty proper subset of the current nodes, members sorted and unique.
struct Cut {
  std::vector<NodeId> members;

  Cut() = default;
  explicit Cut(std::vector<NodeId> m);

  bool contains(NodeId v) const;
  bool operator==(const Cut&) const = default;
  bool operator<(const Cut& o) const { return members < o.members; }
};

// The laminar family of original-node subsets produced by contractions, in
// contraction order.
class ContractionForest {
 public:
  struct Entry {
    std::vector<NodeId> original_nodes;  // sorted
    NodeId merged_node = -1;
    int iteration = 0;
  };

  // True iff the family stays laminar with `s` added (s given as sorted
  // original-node ids).
  bool admits(const std::vector<NodeId>& s) const;

  // Appends an entry; throws InvariantError if laminarity or the 2n-1 size
  // bound would break.
  void record(std::vector<NodeId> s, NodeId merged_node, int iteration,
              int original_node_count);

  // Full pairwise recheck, used by the invariant ledger.
  bool is_laminar() const;

  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int n);  // nodes 0..n-1

  NodeId add_node();
  // Rejects self-loops and dead endpoints; costs must be >= 0.
  EdgeId add_edge(NodeId u, NodeId v, Rational cost);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  bool node_alive(NodeId v) const;
  int original_node_count() const { return original_nodes_; }
  NodeId max_node_id() const { return next_node_ - 1; }

  int edge_count() const;  // live edges only
  int total_edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const;
  std::vector<EdgeId> live_edge_ids() const;
  std::vector<EdgeId> internalized_ids() const;

  // |{e in subset : exactly one endpoint of e in s}|. Internal edges never
  // cross.
  int cut_degree(const std::vector<EdgeId>& subset, const Cut& s) const;
  // Number of edges in subset with endpoint set {u, v}.
  int pair_degree(const std::vector<EdgeId>& subset, NodeId u, NodeId v) const;
  // The ids in subset with endpoint set {u, v}, ascending.
  std::vector<EdgeId> pair_edges(const std::vector<EdgeId>& subset, NodeId u,
                                 NodeId v) const;
  // The ids in subset crossing s, ascending.
  std::vector<EdgeId> boundary(const std::vector<EdgeId>& subset,
                               const Cut& s) const;

  // Identifies all nodes of c into a freshly minted node. Edges with one end
  // inside get the new node as that end; edges with both ends inside become
  // internal. Records the original-node preimage of c in `forest`. Returns
  // the new node id.
  NodeId contract(const Cut& c, ContractionForest& forest, int iteration);

  // Original nodes represented by a current node, sorted.
  const std::vector<NodeId>& preimage(NodeId v) const;
  std::vector<NodeId> preimage_of_cut(const Cut& c) const;

  // Throws std::invalid_argument when c is empty, full, or has dead members.
  void validate_cut(const Cut& c) const;

  Rational cost_of(const std::vector<EdgeId>& subset) const;
  Cut complement(const Cut& c) const;

 private:
  std::vector<NodeId> nodes_;  // sorted live ids
  std::vector<Edge> edges_;    // by id, includes internal
  std::vector<std::vector<NodeId>> preimage_;
  std::vector<char> alive_;
  int original_nodes_ = 0;
  NodeId next_node_ = 0;
};

}  // namespace kecss
