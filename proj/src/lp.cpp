#include "kecss/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include "kecss/errors.hpp"

namespace kecss {

namespace {

enum class VarStatus : char { AtLower, AtUpper, Basic };

// Bounded-variable tableau simplex. Columns: structural variables first,
// then one surplus per row (a.x - s = b, s >= 0), then artificials when the
// classic start needs them.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, bool start_upper) : lp_(lp) {
    n_ = lp.num_vars;
    m_ = static_cast<int>(lp.rows.size());
    ncols_ = n_ + m_;  // artificials appended on demand

    lower_.assign(ncols_, Rational(0));
    upper_.assign(ncols_, Rational(0));
    has_upper_.assign(ncols_, 0);
    for (int j = 0; j < n_; ++j) {
      upper_[j] = lp.upper[j];
      has_upper_[j] = 1;
      if (lp.upper[j] < 0) throw std::invalid_argument("negative upper bound");
    }
    status_.assign(ncols_, VarStatus::AtLower);
    barred_.assign(ncols_, 0);

    tab_.assign(m_, std::vector<Rational>(ncols_, Rational(0)));
    beta_.assign(m_, Rational(0));
    basis_.assign(m_, -1);

    if (start_upper) {
      init_from_upper();
    } else {
      init_from_lower();
    }
  }

  bool start_infeasible() const { return start_infeasible_; }

  LpSolution run() {
    LpSolution out;
    if (start_infeasible_) return out;  // Infeasible

    if (!artificial_rows_.empty()) {
      set_phase1_costs();
      pivot_until_optimal();
      Rational infeas = 0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_ + m_) infeas += beta_[i];
      }
      if (infeas != 0) return out;  // Infeasible
      drive_out_artificials();
      for (int j = n_ + m_; j < ncols_; ++j) barred_[j] = 1;
    }

    set_phase2_costs();
    pivot_until_optimal();

    out.status = LpStatus::Optimal;
    out.x.assign(n_, Rational(0));
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::AtUpper) out.x[j] = upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = beta_[i];
    }
    out.objective = 0;
    for (int j = 0; j < n_; ++j) out.objective += lp_.objective[j] * out.x[j];
    for (int i = 0; i < m_; ++i) {
      int sj = n_ + i;
      if (status_[sj] != VarStatus::Basic) out.tight_rows.push_back(i);
    }
    for (int j = 0; j < n_; ++j) {
      if (status_[j] != VarStatus::Basic) out.nonbasic_vars.push_back(j);
    }
    return out;
  }

 private:
  void write_row(int i, const Rational& sign) {
    for (const auto& [j, a] : lp_.rows[i].coeffs) {
      if (j < 0 || j >= n_) throw std::invalid_argument("row references an unknown variable");
      tab_[i][j] += sign * a;  // += so repeated indices still work
    }
    tab_[i][n_ + i] = -sign;  // surplus column is -1 in the row itself
  }

  void init_from_lower() {
    // x = 0. Rows with rhs <= 0 take their surplus as basis; the rest get an
    // artificial.
    for (int i = 0; i < m_; ++i) {
      const Rational& b = lp_.rows[i].rhs;
      if (b <= 0) {
        write_row(i, Rational(-1));
        basis_[i] = n_ + i;
        beta_[i] = -b;
        status_[n_ + i] = VarStatus::Basic;
      } else {
        write_row(i, Rational(1));
        int aj = ncols_++;
        artificial_rows_.push_back(i);
        lower_.push_back(Rational(0));
        upper_.push_back(Rational(0));
        has_upper_.push_back(0);
        status_.push_back(VarStatus::Basic);
        barred_.push_back(0);
        for (int r = 0; r < m_; ++r) tab_[r].push_back(Rational(0));
        tab_[i][aj] = 1;
        basis_[i] = aj;
        beta_[i] = b;
      }
    }
  }

  void init_from_upper() {
    for (int j = 0; j < n_; ++j) status_[j] = VarStatus::AtUpper;
    for (int i = 0; i < m_; ++i) {
      Rational activity = 0;
      for (const auto& [j, a] : lp_.rows[i].coeffs) {
        if (a < 0) {
          throw std::invalid_argument(
              "upper-bound start needs nonnegative row coefficients");
        }
        activity += a * upper_[j];
      }
      Rational s = activity - lp_.rows[i].rhs;
      if (s < 0) {
        start_infeasible_ = true;
        return;
      }
      write_row(i, Rational(-1));
      basis_[i] = n_ + i;
      beta_[i] = s;
      status_[n_ + i] = VarStatus::Basic;
    }
  }

  void set_phase1_costs() {
    cost_.assign(ncols_, Rational(0));
    for (int j = n_ + m_; j < ncols_; ++j) cost_[j] = 1;
    rebuild_reduced_costs();
  }

  void set_phase2_costs() {
    cost_.assign(ncols_, Rational(0));
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.objective[j];
    rebuild_reduced_costs();
  }

  void rebuild_reduced_costs() {
    zrow_.assign(ncols_, Rational(0));
    for (int j = 0; j < ncols_; ++j) zrow_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < ncols_; ++j) {
        if (tab_[i][j] != 0) zrow_[j] -= cb * tab_[i][j];
      }
    }
  }

  // Degenerate swaps so no artificial stays basic. A row whose tableau
  // entries vanish on every real column is linearly dependent; it stays
  // inert with its artificial pinned at zero.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      int q = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (status_[j] != VarStatus::Basic && tab_[i][j] != 0) {
          q = j;
          break;
        }
      }
      if (q == -1) continue;
      int dir = status_[q] == VarStatus::AtLower ? 1 : -1;
      pivot(i, q, dir, Rational(0));
    }
  }

  void pivot_until_optimal() {
    for (;;) {
      // Entering: Bland, smallest eligible column index.
      int q = -1, dir = 0;
      for (int j = 0; j < ncols_; ++j) {
        if (barred_[j] || status_[j] == VarStatus::Basic) continue;
        if (status_[j] == VarStatus::AtLower && zrow_[j] < 0) {
          q = j;
          dir = 1;
          break;
        }
        if (status_[j] == VarStatus::AtUpper && zrow_[j] > 0) {
          q = j;
          dir = -1;
          break;
        }
      }
      if (q == -1) return;

      // Ratio test; ties leave the basic variable with the smallest index.
      bool have_t = false;
      Rational tstar;
      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        const Rational& a = tab_[i][q];
        if (a == 0) continue;
        Rational step;
        if ((dir > 0) == (a > 0)) {
          step = (beta_[i] - lower_[basis_[i]]) / (dir > 0 ? a : -a);
        } else {
          if (!has_upper_[basis_[i]]) continue;
          step = (upper_[basis_[i]] - beta_[i]) / (dir > 0 ? -a : a);
        }
        if (!have_t || step < tstar ||
            (step == tstar && leave >= 0 && basis_[i] < basis_[leave])) {
          have_t = true;
          tstar = step;
          leave = i;
        }
      }

      if (has_upper_[q]) {
        Rational flip = upper_[q] - lower_[q];
        if (!have_t || flip <= tstar) {
          for (int i = 0; i < m_; ++i) {
            if (tab_[i][q] != 0) beta_[i] -= Rational(dir) * flip * tab_[i][q];
          }
          status_[q] =
              dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
          continue;
        }
      }
      if (!have_t) {
        // Boxed problems cannot have an improving ray.
        throw InvariantError("simplex: unbounded direction in a boxed LP");
      }
      pivot(leave, q, dir, tstar);
    }
  }

  void pivot(int r, int q, int dir, const Rational& step) {
    Rational enter_val =
        (status_[q] == VarStatus::AtLower ? lower_[q] : upper_[q]) +
        Rational(dir) * step;
    int lv = basis_[r];
    VarStatus lv_status = (dir * (tab_[r][q] > 0 ? 1 : -1)) > 0
                              ? VarStatus::AtLower
                              : VarStatus::AtUpper;
    if (!has_upper_[lv]) lv_status = VarStatus::AtLower;

    for (int i = 0; i < m_; ++i) {
      if (i != r && tab_[i][q] != 0) {
        beta_[i] -= Rational(dir) * step * tab_[i][q];
      }
    }
    beta_[r] = enter_val;

    std::vector<Rational>& prow = tab_[r];
    const Rational piv = prow[q];
    if (piv == 0) throw InvariantError("simplex: zero pivot");
    for (int j = 0; j < ncols_; ++j) {
      if (prow[j] != 0) prow[j] /= piv;
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational f = tab_[i][q];
      if (f == 0) continue;
      std::vector<Rational>& row = tab_[i];
      for (int j = 0; j < ncols_; ++j) {
        if (prow[j] != 0) row[j] -= f * prow[j];
      }
    }
    {
      const Rational f = zrow_[q];
      if (f != 0) {
        for (int j = 0; j < ncols_; ++j) {
          if (prow[j] != 0) zrow_[j] -= f * prow[j];
        }
      }
    }

    basis_[r] = q;
    status_[q] = VarStatus::Basic;
    status_[lv] = lv_status;
    if (lv >= n_ + m_) barred_[lv] = 1;  // artificials never come back
  }

  const LinearProgram& lp_;
  int n_ = 0, m_ = 0, ncols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> beta_;
  std::vector<Rational> zrow_;
  std::vector<Rational> cost_;
  std::vector<Rational> lower_, upper_;
  std::vector<char> has_upper_;
  std::vector<VarStatus> status_;
  std::vector<char> barred_;
  std::vector<int> basis_;
  std::vector<int> artificial_rows_;
  bool start_infeasible_ = false;
};

void check_lp(const LinearProgram& lp) {
  if (lp.num_vars < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(lp.objective.size()) != lp.num_vars ||
      static_cast<int>(lp.upper.size()) != lp.num_vars) {
    throw std::invalid_argument("objective/bounds size mismatch");
  }
}

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  check_lp(lp);
  Simplex s(lp, /*start_upper=*/false);
  return s.run();
}

LpSolution simplex_solve_from_upper(const LinearProgram& lp) {
  check_lp(lp);
  Simplex s(lp, /*start_upper=*/true);
  return s.run();
}

int rational_rank(std::vector<std::vector<Rational>> rows, int dim) {
  int rank = 0;
  int col = 0;
  const int nrows = static_cast<int>(rows.size());
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != dim) {
      throw std::invalid_argument("rank: ragged matrix");
    }
  }
  while (rank < nrows && col < dim) {
    int piv = -1;
    for (int i = rank; i < nrows; ++i) {
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == -1) {
      ++col;
      continue;
    }
    std::swap(rows[rank], rows[piv]);
    const Rational p = rows[rank][col];
    for (int i = rank + 1; i < nrows; ++i) {
      if (rows[i][col] == 0) continue;
      const Rational f = rows[i][col] / p;
      for (int j = col; j < dim; ++j) {
        if (rows[rank][j] != 0) rows[i][j] -= f * rows[rank][j];
      }
    }
    ++rank;
    ++col;
  }
  return rank;
}

}  // namespace kecss
