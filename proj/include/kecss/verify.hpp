#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kecss/bicriteria.hpp"
#include "kecss/ecsm.hpp"
#include "kecss/multigraph.hpp"

namespace kecss {

// Everything a reviewer needs to trust one run: the headline guarantees
// recomputed from scratch plus the per-iteration invariant record. A
// certificate is VALID only when every entry passes and both headline
// inequalities hold exactly.
struct Certificate {
  uint64_t digest = 0;
  std::string algorithm;
  int k = 0;
  int n0 = 0;
  int m0 = 0;
  Rational cost;
  Rational lp0;
  Rational cost_bound;
  bool mincut_infinite = false;  // single-node instance
  long long mincut = 0;
  int connectivity_threshold = 0;
  int iterations = 0;
  bool cost_ok = false;
  bool connectivity_ok = false;
  bool ledger_ok = false;
  bool valid = false;
  std::vector<LedgerEntry> ledger;

  std::string to_text() const;  // deterministic, line oriented
};

// Recomputes cost and the global min cut of the chosen subgraph from
// (g0, edges) alone and evaluates the guarantees at the stated thresholds.
Certificate certify(const MultiGraph& g0, int k, Algorithm alg,
                    const Solution& sol, std::vector<LedgerEntry> ledger,
                    int iterations, uint64_t digest);

// Multisubgraph flavor: the min cut counts multiplicities and the demand is
// the full k.
Certificate certify_multiset(const MultiGraph& g0, int k,
                             const EcsmResult& res, uint64_t digest);

struct BruteForceResult {
  bool feasible = false;
  std::vector<EdgeId> edges;
  Rational cost;
};

// Exact minimum-cost subgraph with min cut >= k by include/exclude search
// with cost and degree-deficiency pruning. Guarded to 20 edges.
BruteForceResult brute_force_opt(const MultiGraph& g0, int k);

// Optimum of the cut LP with every constraint materialized (then reduced by
// removing rows implied by a contained boundary, which cannot change the
// value). Must match the lazy driver bit for bit. Guarded to 12 nodes.
Rational lp_by_enumeration(const MultiGraph& g0, int k);

struct SandwichReport {
  bool feasible = false;       // instance supports connectivity k at all
  bool lower_checked = false;  // k >= 5, so the lower endpoint applies
  Rational lower_opt;
  Rational cost;
  Rational upper_opt;
  bool ok = false;
  std::string note;
};

// Runs the (1, k-4) algorithm and pins its cost between the exact optima at
// connectivity k-4 (when k >= 5) and k.
SandwichReport sandwich_check(const MultiGraph& g0, int k);

}  // namespace kecss
