#pragma once

#include <map>
#include <set>
#include <vector>

#include "kecss/lp.hpp"
#include "kecss/mincut.hpp"
#include "kecss/state.hpp"

namespace kecss {

// An optimal vertex of the residual cut LP over the current undecided edges.
struct ExtremePoint {
  std::map<EdgeId, Rational> values;  // one entry per undecided edge
  Rational objective;
  int fractional_count = 0;  // entries strictly between 0 and 1
  bool tight_rows_independent = false;
  // Fractional boundaries of the rows that hold with equality; together with
  // the variables pinned at a bound these define the vertex.
  std::vector<std::vector<EdgeId>> tight_boundaries;
};

// Cut constraints carried across LP solves. Cuts live in current node ids
// and are remapped when a contraction happens.
class CutPool {
 public:
  bool add(const Cut& c);  // false when already pooled
  void remap(const Cut& contracted, NodeId merged);
  void retain(const std::vector<Cut>& keep);
  const std::vector<Cut>& cuts() const { return cuts_; }
  size_t size() const { return cuts_.size(); }

 private:
  std::vector<Cut> cuts_;
  std::set<Cut> seen_;
};

struct CuttingPlaneStats {
  int rounds = 0;
  int rows_final = 0;
};

// Row generation to optimality: solve the pooled relaxation, ask the
// separation oracle for a violated cut, add it, repeat. Throws
// InfeasibleError (with an original-node witness) when some cut cannot reach
// its requirement even with every edge at 1, and InvariantError if the round
// cap is hit, which a finite constraint family makes impossible short of a
// bug.
ExtremePoint cutting_plane_extreme_point(const SolverState& st, CutPool& pool,
                                         CuttingPlaneStats* stats = nullptr,
                                         int max_rounds = 100000);

}  // namespace kecss
