#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kecss/multigraph.hpp"
#include "kecss/rational.hpp"
#include "kecss/state.hpp"

namespace kecss {

struct WeightedEdge {
  NodeId u = -1;
  NodeId v = -1;
  Rational cap;
};

// Undirected max-flow with exact rational capacities, augmenting shortest
// paths. Small and deterministic; graphs here are desk scale.
class FlowNetwork {
 public:
  FlowNetwork(std::vector<NodeId> nodes, const std::vector<WeightedEdge>& edges);

  struct Result {
    Rational value;
    bool capped = false;  // stopped early: value already exceeds the cutoff
    Cut min_side;         // inclusion-minimal source-side min cut
    Cut max_side;         // inclusion-maximal source-side min cut
  };

  // When stop_above is given, augmentation stops as soon as the flow value
  // exceeds it; the result is then capped and carries no cut.
  Result max_flow(NodeId s, NodeId t, const Rational* stop_above = nullptr);

  const std::vector<NodeId>& nodes() const { return nodes_; }

 private:
  struct Arc {
    int to;
    Rational residual;
  };
  std::vector<NodeId> nodes_;
  std::vector<int> index_of_;  // node id -> dense index, -1 when absent
  std::vector<Arc> arcs_;      // paired, rev(a) = a ^ 1
  std::vector<Rational> caps_;
  std::vector<std::vector<int>> adj_;
};

// Capacities for the separation network: x_e on undecided edges, 1 on bought
// edges, and the variant's ghost weight on live ghost edges.
std::vector<WeightedEdge> capacity_assignment(
    const SolverState& st, const std::map<EdgeId, Rational>& x);

// Exact global minimum cut over all proper node subsets, via max-flows from
// a fixed root. Throws std::invalid_argument on a single-node graph.
std::pair<Rational, Cut> global_min_cut(const std::vector<NodeId>& nodes,
                                        const std::vector<WeightedEdge>& edges);

// Finds a cut whose residual requirement is violated by x, or certifies that
// none exists. Singleton cuts of relaxed nodes (and their complements) carry
// no constraint and are skipped.
std::optional<Cut> separate(const SolverState& st,
                            const std::map<EdgeId, Rational>& x);

// An inclusion-minimal tight cut with positive residual requirement; the
// unit the algorithms contract.
struct CoreCandidate {
  Cut members;
  Rational w_capacity;
  int fractional_degree = 0;  // d_E
  int f_value = 0;
  Rational x_boundary;        // x over the fractional boundary, equals f_value
  int ghost_degree = 0;       // d_H
  int chosen_degree = 0;      // d_I
};

// All cores of a feasible, fully fractional x: the inclusion-minimal cuts of
// separation capacity exactly k with a nonempty fractional boundary, after a
// direct recheck of positivity and tightness. Discovery order is
// deterministic (ascending edge id over ordered endpoint pairs).
std::vector<CoreCandidate> find_cores(const SolverState& st,
                                      const std::map<EdgeId, Rational>& x);

}  // namespace kecss
