#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "kecss/lp.hpp"
#include "kecss/multigraph.hpp"
#include "kecss/state.hpp"

namespace kecss::testing {

// Deterministic generator for property-style tests.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}

  int uniform(int lo, int hi) {
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t r;
    do {
      r = eng();
    } while (r >= limit);
    return lo + static_cast<int>(r % range);
  }

  Rational rational(int max_num, int max_den) {
    return Rational(uniform(0, max_num), uniform(1, max_den));
  }
};

// Connected-ish random multigraph: a random spanning tree plus extra edges.
inline MultiGraph random_graph(Rng& rng, int n, int extra_edges,
                               int cost_max = 10) {
  MultiGraph g(n);
  for (int v = 1; v < n; ++v) {
    g.add_edge(rng.uniform(0, v - 1), v, Rational(rng.uniform(1, cost_max)));
  }
  for (int i = 0; i < extra_edges; ++i) {
    int u = rng.uniform(0, n - 1);
    int v = rng.uniform(0, n - 1);
    if (u == v) continue;
    g.add_edge(u, v, Rational(rng.uniform(1, cost_max)));
  }
  return g;
}

// All proper subsets of the live nodes (2^n - 2 of them; keep n small).
inline std::vector<Cut> all_cuts(const MultiGraph& g) {
  const auto& nodes = g.nodes();
  const int n = static_cast<int>(nodes.size());
  std::vector<Cut> cuts;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<NodeId> members;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) members.push_back(nodes[i]);
    }
    cuts.push_back(Cut(std::move(members)));
  }
  return cuts;
}

// Direct edge-list scan, independent of MultiGraph::cut_degree.
inline int direct_cut_degree(const MultiGraph& g,
                             const std::vector<EdgeId>& subset, const Cut& s) {
  int count = 0;
  for (EdgeId id : subset) {
    const Edge& e = g.edge(id);
    if (e.internal) continue;
    bool iu = s.contains(e.u), iv = s.contains(e.v);
    if (iu != iv) ++count;
  }
  return count;
}

// Exhaustive min cut over every proper subset; independent of the flow code.
inline std::pair<Rational, Cut> enumerate_min_cut(
    const std::vector<NodeId>& nodes,
    const std::vector<std::tuple<NodeId, NodeId, Rational>>& edges) {
  const int n = static_cast<int>(nodes.size());
  bool have = false;
  Rational best;
  Cut best_cut;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<NodeId> members;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) members.push_back(nodes[i]);
    }
    Cut c(std::move(members));
    Rational w = 0;
    for (const auto& [u, v, cap] : edges) {
      if (c.contains(u) != c.contains(v)) w += cap;
    }
    if (!have || w < best) {
      have = true;
      best = w;
      best_cut = c;
    }
  }
  return {best, best_cut};
}

// Exact LP optimum by enumerating candidate vertices: every choice of
// num_vars tight constraints among rows and bounds, solved exactly, checked
// for feasibility. Returns nullopt when infeasible.
inline std::optional<Rational> lp_vertex_enumeration(const LinearProgram& lp) {
  const int n = lp.num_vars;
  // Constraint list: rows as equalities, then x_j = 0, then x_j = upper_j.
  struct Con {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Con> cons;
  for (const LpRow& row : lp.rows) {
    Con c;
    c.a.assign(n, Rational(0));
    for (auto& [j, v] : row.coeffs) c.a[j] += v;
    c.b = row.rhs;
    cons.push_back(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    Con c;
    c.a.assign(n, Rational(0));
    c.a[j] = 1;
    c.b = 0;
    cons.push_back(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    Con c;
    c.a.assign(n, Rational(0));
    c.a[j] = 1;
    c.b = lp.upper[j];
    cons.push_back(std::move(c));
  }

  const int total = static_cast<int>(cons.size());
  std::optional<Rational> best;

  std::vector<int> pick(n);
  auto feasible = [&](const std::vector<Rational>& x) {
    for (int j = 0; j < n; ++j) {
      if (x[j] < 0 || x[j] > lp.upper[j]) return false;
    }
    for (const LpRow& row : lp.rows) {
      Rational act = 0;
      for (auto& [j, v] : row.coeffs) act += v * x[j];
      if (act < row.rhs) return false;
    }
    return true;
  };

  // Solve the picked square system by Gaussian elimination; nullopt when
  // singular.
  auto solve = [&]() -> std::optional<std::vector<Rational>> {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = cons[pick[i]].a[j];
      m[i][n] = cons[pick[i]].b;
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r) {
        if (m[r][col] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return std::nullopt;
      std::swap(m[col], m[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col] / m[col][col];
        for (int j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
  };

  // Iterate all n-subsets of the constraints.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (n == 0) {
    // No variables: feasible iff every rhs is nonpositive.
    for (const LpRow& row : lp.rows) {
      if (row.rhs > 0) return std::nullopt;
    }
    return Rational(0);
  }
  if (total < n) return std::nullopt;
  for (;;) {
    for (int i = 0; i < n; ++i) pick[i] = idx[i];
    if (auto x = solve(); x && feasible(*x)) {
      Rational obj = 0;
      for (int j = 0; j < n; ++j) obj += lp.objective[j] * (*x)[j];
      if (!best || obj < *best) best = obj;
    }
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == total - n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

}  // namespace kecss::testing
