#pragma once

#include <set>
#include <string>
#include <vector>

#include "kecss/multigraph.hpp"
#include "kecss/rational.hpp"

namespace kecss {

enum class Algorithm { Bicriteria1, Bicriteria2, Ecsm };

std::string algorithm_name(Algorithm alg);

// A virtual edge between two former core nodes. Its witness is the set of
// integral edges that ran between the endpoints when it was created; the
// witnesses of distinct ghost edges are disjoint. Endpoints are remapped by
// later contractions; a ghost whose endpoints merge goes dead and crosses no
// further cut.
struct GhostEdge {
  NodeId a = -1;
  NodeId b = -1;
  std::vector<EdgeId> witness;
  bool dead = false;
};

// The evolving quadruple (G, I, H, U) plus the contraction forest. Edge ids
// refer to the original edge set throughout; every original edge is in
// exactly one of fractional / integral / dropped.
struct SolverState {
  MultiGraph g;
  ContractionForest forest;
  std::vector<EdgeId> fractional;  // E: undecided, the current LP variables
  std::vector<EdgeId> integral;    // I: bought
  std::vector<EdgeId> dropped;     // removed at value zero
  std::vector<GhostEdge> ghosts;   // H, append-only
  std::set<NodeId> relaxed;        // U
  int k = 0;
  Algorithm alg = Algorithm::Bicriteria1;
  int mu = 0;
  int iteration = 0;

  static SolverState initial(MultiGraph g0, int k, Algorithm alg);

  // Capacity of a ghost edge in the separation network: 2 for the unit-cost
  // variant, 1 for the 3/2 variant.
  int ghost_weight() const;
  // Integral rounding threshold: 1, or 2/3 for the 3/2 variant.
  Rational rounding_threshold() const;
  // Relaxation subtracted for singleton cuts of relaxed nodes: 2 or 1.
  int singleton_relaxation() const;

  int chosen_degree(const Cut& s) const;      // d_I
  int ghost_degree(const Cut& s) const;       // d_H, live ghosts crossing s
  int fractional_degree(const Cut& s) const;  // d_E
  int ghost_node_degree(NodeId v) const;
  int chosen_pair_degree(NodeId u, NodeId v) const;
  int ghost_pair_degree(NodeId u, NodeId v) const;
  std::vector<EdgeId> chosen_pair_edges(NodeId u, NodeId v) const;
  std::vector<EdgeId> fractional_boundary(const Cut& s) const;

  // True iff s or its complement is {u} for some relaxed u.
  bool relaxed_singleton(const Cut& s) const;

  // The residual cut requirement. Exact integer; cuts with a nonpositive
  // value impose nothing.
  int eval_f(const Cut& s) const;

  void move_to_integral(const std::vector<EdgeId>& edges);
  void drop_edges(const std::vector<EdgeId>& edges);

  Rational integral_cost() const;
};

// Required parallel integral support before a ghost edge may be added:
// ceil((k-3)/2), or ceil((k-1)/2) for the 3/2 variant.
int ghost_support_threshold(int k, Algorithm alg);

}  // namespace kecss
