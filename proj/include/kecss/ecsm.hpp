#pragma once

#include <map>

#include "kecss/bicriteria.hpp"
#include "kecss/multigraph.hpp"

namespace kecss {

// A multisubgraph: each original edge may be bought any number of times at
// its original cost.
struct MultiSolution {
  std::map<EdgeId, int> multiplicity;  // only positive entries
  Rational cost;
};

struct EcsmResult {
  MultiSolution solution;
  Rational lp0;  // cut LP optimum at k' on the replicated graph
  int kprime = 0;
  std::vector<LedgerEntry> ledger;
  int iterations = 0;
};

// Multisubgraph solver with ratio 1 + 4/k: replicate every edge k+4 times,
// demand k' = k+4 from the (1, k-4) algorithm, fold the chosen copies back
// into multiplicities. The result is k-edge-connected and costs at most the
// replicated LP optimum.
EcsmResult solve_ecsm(const MultiGraph& g0, int k, const RunOptions& opt = {});

// Exhaustive oracle over multiplicity vectors in [0, max_mult]^E; feasibility
// checked by direct cut enumeration, independent of the flow kernel. Guarded
// to at most 4 nodes, 4 edges, k <= 4.
MultiSolution brute_force_ecsm(const MultiGraph& g0, int k, int max_mult);

}  // namespace kecss
