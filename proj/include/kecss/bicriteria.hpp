#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kecss/cutting_plane.hpp"
#include "kecss/mincut.hpp"
#include "kecss/state.hpp"

namespace kecss {

struct LedgerEntry {
  std::string name;
  int iteration = 0;
  bool pass = true;
  std::string detail;
};

struct IterationTrace {
  int iteration = 0;
  Rational lp_value;
  int zeros_dropped = 0;
  int moved_integral = 0;
  bool contracted = false;
  bool ghost_added = false;
  int nodes = 0;
  int undecided = 0;
};

struct Solution {
  std::vector<EdgeId> edges;  // chosen original edge ids, ascending
  Rational cost;
  Rational lp0;  // optimal value of the first LP solve
  std::vector<IterationTrace> trace;
};

struct RunOptions {
  long long max_iterations = 0;  // 0 = default cap (or ECSS_MAX_ITERS)
  std::function<void(const SolverState&, const ExtremePoint&)> observer;
  std::function<void(const std::string&)> trace_sink;
};

struct RunResult {
  Solution solution;
  std::vector<LedgerEntry> ledger;
  int iterations = 0;
};

// Safety cap on outer iterations: 10 * 3 * (2 n0 - 1), overridable through
// the ECSS_MAX_ITERS environment variable.
long long default_iteration_cap(int n0);

// Lexicographically first pair of relaxed nodes joined by at least mu
// integral edges and no ghost edge.
std::optional<std::pair<NodeId, NodeId>> find_ghost_pair(const SolverState&);

// Adds the ghost edge and removes both endpoints from the relaxed set;
// throws InvariantError when a precondition fails.
void add_ghost_edge(SolverState& st, NodeId u, NodeId v);

// Re-verifies the core against x, contracts it, moves the new node into the
// relaxed set, and remaps ghost endpoints. Returns the new node id.
NodeId contract_core(SolverState& st, const CoreCandidate& core,
                     const std::map<EdgeId, Rational>& x);

// The (1, k-4) algorithm: round at 1, contract positive tight cores, relax
// pairs of former cores with ghost edges. Output J costs at most the first
// LP optimum and is (k-4)-edge-connected.
RunResult run_algorithm1(const MultiGraph& g0, int k,
                         const RunOptions& opt = {});

// The (3/2, k-2) variant: rounds at 2/3, unit ghost weight, tighter core
// acceptance. Output costs at most 3/2 the first LP optimum and is
// (k-2)-edge-connected.
RunResult run_algorithm2(const MultiGraph& g0, int k,
                         const RunOptions& opt = {});

}  // namespace kecss
