#pragma once

#include <utility>
#include <vector>

#include "kecss/rational.hpp"

namespace kecss {

// A >= constraint: sum of coeff * x over the listed variables >= rhs.
struct LpRow {
  std::vector<std::pair<int, Rational>> coeffs;  // ascending variable index
  Rational rhs;
};

// min objective . x  subject to the rows and 0 <= x_j <= upper_j.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Rational> upper;  // lower bounds are all zero
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational objective;
  // Rows whose surplus is nonbasic: the row holds with equality and belongs
  // to the defining system of the returned vertex.
  std::vector<int> tight_rows;
  // Structural variables nonbasic at a bound; together with tight_rows these
  // are num_vars constraints whose unique solution is x.
  std::vector<int> nonbasic_vars;
};

// Primal simplex with Bland's minimum-index rule, exact rational arithmetic
// throughout. Two-phase: starts from x = 0 with artificials covering the
// violated rows. Deterministic: identical inputs give identical solutions.
LpSolution simplex_solve(const LinearProgram& lp);

// Same pivot rule, but starts from every structural variable at its upper
// bound with the surplus basis. Requires nonnegative row coefficients; then
// the start is feasible iff each row is satisfiable at all, so no phase one
// is needed. Returns Infeasible (with no phase-one work) when some row cannot
// be met even at the upper bounds.
LpSolution simplex_solve_from_upper(const LinearProgram& lp);

// Rank over the rationals of a set of vectors of length dim.
int rational_rank(std::vector<std::vector<Rational>> rows, int dim);

}  // namespace kecss
