#include "kecss/ecsm.hpp"

#include <algorithm>
#include <stdexcept>

#include "kecss/errors.hpp"

namespace kecss {

EcsmResult solve_ecsm(const MultiGraph& g0, int k, const RunOptions& opt) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (g0.node_count() != g0.original_node_count() ||
      g0.node_count() != g0.max_node_id() + 1) {
    throw std::invalid_argument("solve_ecsm expects an uncontracted graph");
  }

  EcsmResult res;
  res.kprime = k + 4;
  if (g0.node_count() == 1) {
    res.solution.cost = 0;
    res.lp0 = 0;
    return res;
  }

  MultiGraph replicated(g0.node_count());
  std::vector<EdgeId> original_of;  // copy id -> original id
  for (EdgeId id : g0.live_edge_ids()) {
    const Edge& e = g0.edge(id);
    for (int c = 0; c < res.kprime; ++c) {
      replicated.add_edge(e.u, e.v, e.cost);
      original_of.push_back(id);
    }
  }

  RunResult rr = run_algorithm1(replicated, res.kprime, opt);
  for (EdgeId copy : rr.solution.edges) {
    EdgeId orig = original_of[copy];
    res.solution.multiplicity[orig] += 1;
    res.solution.cost += g0.edge(orig).cost;
  }
  res.lp0 = rr.solution.lp0;
  res.ledger = std::move(rr.ledger);
  res.iterations = rr.iterations;
  if (res.solution.cost != rr.solution.cost) {
    throw InvariantError("multiplicity fold changed the cost");
  }
  return res;
}

MultiSolution brute_force_ecsm(const MultiGraph& g0, int k, int max_mult) {
  const int n = g0.node_count();
  const std::vector<EdgeId> edges = g0.live_edge_ids();
  const int m = static_cast<int>(edges.size());
  if (n > 4 || m > 4 || k > 4) {
    throw std::invalid_argument("brute_force_ecsm instance too large");
  }
  if (max_mult < k) {
    throw std::invalid_argument("brute_force_ecsm needs max_mult >= k");
  }
  MultiSolution best;
  if (n == 1) {
    best.cost = 0;
    return best;
  }

  // All cuts, as bitmasks over node positions with position 0 fixed inside.
  const std::vector<NodeId>& nodes = g0.nodes();
  std::vector<std::vector<int>> crossing;  // per cut: indices into edges
  for (unsigned mask = 1; mask < (1u << n); mask += 2) {
    if (mask == (1u << n) - 1) continue;
    std::vector<int> cross;
    for (int i = 0; i < m; ++i) {
      const Edge& e = g0.edge(edges[i]);
      int pu = static_cast<int>(std::find(nodes.begin(), nodes.end(), e.u) -
                                nodes.begin());
      int pv = static_cast<int>(std::find(nodes.begin(), nodes.end(), e.v) -
                                nodes.begin());
      if (((mask >> pu) & 1u) != ((mask >> pv) & 1u)) cross.push_back(i);
    }
    crossing.push_back(std::move(cross));
  }

  std::vector<int> mult(m, 0);
  bool found = false;
  Rational best_cost;
  std::vector<int> best_mult;
  for (;;) {
    bool feasible = true;
    for (const auto& cross : crossing) {
      int total = 0;
      for (int i : cross) total += mult[i];
      if (total < k) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      Rational cost = 0;
      for (int i = 0; i < m; ++i) cost += Rational(mult[i]) * g0.edge(edges[i]).cost;
      if (!found || cost < best_cost) {
        found = true;
        best_cost = cost;
        best_mult = mult;
      }
    }
    int pos = m - 1;
    while (pos >= 0 && mult[pos] == max_mult) mult[pos--] = 0;
    if (pos < 0) break;
    ++mult[pos];
  }
  if (!found) {
    throw InfeasibleError("no multiset meets the connectivity demand");
  }
  best.cost = best_cost;
  for (int i = 0; i < m; ++i) {
    if (best_mult[i] > 0) best.multiplicity[edges[i]] = best_mult[i];
  }
  return best;
}

}  // namespace kecss
