#include "kecss/cutting_plane.hpp"

#include <algorithm>

#include "kecss/errors.hpp"

namespace kecss {

bool CutPool::add(const Cut& c) {
  if (!seen_.insert(c).second) return false;
  cuts_.push_back(c);
  return true;
}

void CutPool::remap(const Cut& contracted, NodeId merged) {
  std::vector<Cut> updated;
  std::set<Cut> dedupe;
  for (const Cut& c : cuts_) {
    std::vector<NodeId> members;
    bool touched = false;
    for (NodeId v : c.members) {
      if (contracted.contains(v)) {
        touched = true;
      } else {
        members.push_back(v);
      }
    }
    if (touched) members.push_back(merged);
    Cut mapped(std::move(members));
    if (mapped.members.empty()) continue;
    if (dedupe.insert(mapped).second) updated.push_back(std::move(mapped));
  }
  cuts_ = std::move(updated);
  seen_ = std::move(dedupe);
}

void CutPool::retain(const std::vector<Cut>& keep) {
  cuts_.clear();
  seen_.clear();
  for (const Cut& c : keep) add(c);
}

ExtremePoint cutting_plane_extreme_point(const SolverState& st, CutPool& pool,
                                         CuttingPlaneStats* stats,
                                         int max_rounds) {
  if (st.fractional.empty()) {
    throw InvariantError("cutting plane called with no undecided edges");
  }

  for (NodeId v : st.g.nodes()) {
    pool.add(Cut(std::vector<NodeId>{v}));
  }

  const std::vector<EdgeId>& vars = st.fractional;  // ascending ids
  const int nvars = static_cast<int>(vars.size());
  std::map<EdgeId, int> var_of;
  for (int i = 0; i < nvars; ++i) var_of[vars[i]] = i;

  for (int round = 1; round <= max_rounds; ++round) {
    if (stats) stats->rounds = round;

    LinearProgram lp;
    lp.num_vars = nvars;
    lp.objective.reserve(nvars);
    lp.upper.assign(nvars, Rational(1));
    for (EdgeId id : vars) lp.objective.push_back(st.g.edge(id).cost);

    struct RowInfo {
      size_t pool_index;
      std::vector<EdgeId> boundary;
      int f;
    };
    std::vector<RowInfo> rows;
    std::map<std::vector<EdgeId>, size_t> by_boundary;
    for (size_t ci = 0; ci < pool.cuts().size(); ++ci) {
      const Cut& cut = pool.cuts()[ci];
      const int f = st.eval_f(cut);
      if (f <= 0) continue;  // imposes nothing
      std::vector<EdgeId> boundary = st.fractional_boundary(cut);
      if (static_cast<int>(boundary.size()) < f) {
        // Even buying every undecided edge across the cut falls short.
        throw InfeasibleError(
            "cut requirement exceeds the available edges across it",
            st.g.preimage_of_cut(cut));
      }
      auto it = by_boundary.find(boundary);
      if (it != by_boundary.end()) {
        rows[it->second].f = std::max(rows[it->second].f, f);
        continue;
      }
      by_boundary.emplace(boundary, rows.size());
      rows.push_back(RowInfo{ci, std::move(boundary), f});
    }

    for (const RowInfo& r : rows) {
      LpRow row;
      row.rhs = r.f;
      for (EdgeId id : r.boundary) {
        row.coeffs.emplace_back(var_of.at(id), Rational(1));
      }
      lp.rows.push_back(std::move(row));
    }

    LpSolution sol = simplex_solve_from_upper(lp);
    if (sol.status != LpStatus::Optimal) {
      // Every row passed the all-ones check above, so the relaxation has a
      // feasible point by construction.
      throw InvariantError("relaxed cut LP reported infeasible");
    }

    std::map<EdgeId, Rational> x;
    for (int i = 0; i < nvars; ++i) x[vars[i]] = sol.x[i];

    if (auto violated = separate(st, x)) {
      if (!pool.add(*violated)) {
        throw InvariantError("separation oracle returned a pooled cut");
      }
      continue;
    }

    ExtremePoint ep;
    ep.values = std::move(x);
    ep.objective = sol.objective;
    for (const auto& [id, val] : ep.values) {
      (void)id;
      if (val > 0 && val < 1) ++ep.fractional_count;
    }

    // The defining system: variables pinned at a bound plus the tight rows.
    std::vector<std::vector<Rational>> defining;
    for (int j : sol.nonbasic_vars) {
      std::vector<Rational> unit(nvars, Rational(0));
      unit[j] = 1;
      defining.push_back(std::move(unit));
    }
    std::vector<Cut> tight_cuts;
    for (int ri : sol.tight_rows) {
      const RowInfo& info = rows[ri];
      std::vector<Rational> vec(nvars, Rational(0));
      for (EdgeId id : info.boundary) vec[var_of.at(id)] = 1;
      defining.push_back(std::move(vec));
      ep.tight_boundaries.push_back(info.boundary);
      tight_cuts.push_back(pool.cuts()[info.pool_index]);
    }
    ep.tight_rows_independent =
        rational_rank(std::move(defining), nvars) == nvars;

    if (stats) stats->rows_final = static_cast<int>(rows.size());
    pool.retain(tight_cuts);
    return ep;
  }
  throw InvariantError("cutting plane hit the round cap");
}

}  // namespace kecss
