#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "kecss/lp.hpp"
#include "kecss/rational.hpp"

using namespace kecss;
using kecss::testing::Rng;

namespace {

LinearProgram two_var_cover() {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(1)};
  lp.upper = {Rational(1), Rational(1)};
  LpRow row;
  row.coeffs = {{0, Rational(1)}, {1, Rational(1)}};
  row.rhs = 1;
  lp.rows.push_back(row);
  return lp;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(*parse_rational("7/3") == Rational(7, 3));
  CHECK(*parse_rational("42") == Rational(42));
  CHECK(*parse_rational("0.6") == Rational(3, 5));
  CHECK(*parse_rational("-5/10") == Rational(-1, 2));
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("a").has_value());
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(-8, 2)) == "-4");
  CHECK(*parse_rational(format_rational(Rational(355, 113))) ==
        Rational(355, 113));
}

TEST_CASE("exact comparison at the rounding threshold") {
  // the closest double below 2/3; exact arithmetic must classify it as
  // strictly smaller
  Rational near(BigInt("6004799503160661"), BigInt("9007199254740992"));
  CHECK(near < Rational(2, 3));
  CHECK(Rational(2, 3) >= Rational(2, 3));
  CHECK(ceil_div(-2, 2) == -1);
  CHECK(ceil_div(-1, 2) == 0);
  CHECK(ceil_div(0, 2) == 0);
  CHECK(ceil_div(1, 2) == 1);
  CHECK(ceil_div(5, 2) == 3);
}

TEST_CASE("cover LP lands on the minimum-index vertex") {
  LpSolution sol = simplex_solve(two_var_cover());
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == 1);
  CHECK(sol.x[0] == 1);
  CHECK(sol.x[1] == 0);
}

TEST_CASE("unsatisfiable bound is infeasible") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(1)};
  lp.upper = {Rational(1)};
  LpRow row;
  row.coeffs = {{0, Rational(1)}};
  row.rhs = 2;
  lp.rows.push_back(row);
  CHECK(simplex_solve(lp).status == LpStatus::Infeasible);
  CHECK(simplex_solve_from_upper(lp).status == LpStatus::Infeasible);
}

TEST_CASE("both starts agree with vertex enumeration on random LPs") {
  Rng rng(101);
  int solved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    LinearProgram lp;
    lp.num_vars = rng.uniform(1, 5);
    for (int j = 0; j < lp.num_vars; ++j) {
      lp.objective.push_back(Rational(rng.uniform(-4, 6)));
      lp.upper.push_back(Rational(rng.uniform(1, 3)));
    }
    const int rows = rng.uniform(0, 6);
    for (int i = 0; i < rows; ++i) {
      LpRow row;
      for (int j = 0; j < lp.num_vars; ++j) {
        int c = rng.uniform(-2, 3);
        if (c != 0) row.coeffs.emplace_back(j, Rational(c));
      }
      row.rhs = rng.uniform(-3, 5);
      lp.rows.push_back(std::move(row));
    }

    auto oracle = kecss::testing::lp_vertex_enumeration(lp);
    LpSolution sol = simplex_solve(lp);
    if (!oracle) {
      CHECK(sol.status == LpStatus::Infeasible);
      continue;
    }
    ++solved;
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == *oracle);

    // solution is a feasible point of the stated system
    for (int j = 0; j < lp.num_vars; ++j) {
      CHECK(sol.x[j] >= 0);
      CHECK(sol.x[j] <= lp.upper[j]);
    }
    for (const LpRow& row : lp.rows) {
      Rational act = 0;
      for (auto& [j, v] : row.coeffs) act += v * sol.x[j];
      CHECK(act >= row.rhs);
    }
  }
  CHECK(solved > 40);
}

TEST_CASE("upper-bound start agrees with the classic start on cut-style rows") {
  Rng rng(202);
  for (int trial = 0; trial < 80; ++trial) {
    LinearProgram lp;
    lp.num_vars = rng.uniform(1, 6);
    for (int j = 0; j < lp.num_vars; ++j) {
      lp.objective.push_back(Rational(rng.uniform(0, 8)));
      lp.upper.push_back(Rational(1));
    }
    const int rows = rng.uniform(1, 6);
    for (int i = 0; i < rows; ++i) {
      LpRow row;
      for (int j = 0; j < lp.num_vars; ++j) {
        if (rng.uniform(0, 1)) row.coeffs.emplace_back(j, Rational(1));
      }
      row.rhs = rng.uniform(0, 3);
      lp.rows.push_back(std::move(row));
    }
    LpSolution a = simplex_solve(lp);
    LpSolution b = simplex_solve_from_upper(lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      CHECK(a.objective == b.objective);
    }
  }
}

TEST_CASE("simplex is deterministic") {
  LinearProgram lp = two_var_cover();
  LpSolution a = simplex_solve(lp);
  LpSolution b = simplex_solve(lp);
  CHECK(a.x == b.x);
  CHECK(a.tight_rows == b.tight_rows);
  CHECK(a.nonbasic_vars == b.nonbasic_vars);
}

TEST_CASE("defining system of the returned vertex has full rank") {
  Rng rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    LinearProgram lp;
    lp.num_vars = rng.uniform(2, 6);
    for (int j = 0; j < lp.num_vars; ++j) {
      lp.objective.push_back(Rational(rng.uniform(1, 9)));
      lp.upper.push_back(Rational(1));
    }
    for (int i = 0, rows = rng.uniform(1, 5); i < rows; ++i) {
      LpRow row;
      for (int j = 0; j < lp.num_vars; ++j) {
        if (rng.uniform(0, 2)) row.coeffs.emplace_back(j, Rational(1));
      }
      if (row.coeffs.empty()) continue;
      row.rhs = rng.uniform(1, static_cast<int>(row.coeffs.size()));
      lp.rows.push_back(std::move(row));
    }
    LpSolution sol = simplex_solve_from_upper(lp);
    if (sol.status != LpStatus::Optimal) continue;

    std::vector<std::vector<Rational>> defining;
    for (int j : sol.nonbasic_vars) {
      std::vector<Rational> unit(lp.num_vars, Rational(0));
      unit[j] = 1;
      defining.push_back(std::move(unit));
    }
    for (int ri : sol.tight_rows) {
      std::vector<Rational> vec(lp.num_vars, Rational(0));
      for (auto& [j, v] : lp.rows[ri].coeffs) vec[j] += v;
      defining.push_back(std::move(vec));
    }
    CHECK(static_cast<int>(defining.size()) == lp.num_vars);
    CHECK(rational_rank(defining, lp.num_vars) == lp.num_vars);
  }
}
