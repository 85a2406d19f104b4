#include "kecss/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "kecss/errors.hpp"
#include "kecss/mincut.hpp"

namespace kecss {

namespace {

std::vector<WeightedEdge> unit_edges(const MultiGraph& g,
                                     const std::vector<EdgeId>& ids) {
  std::vector<WeightedEdge> out;
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    out.push_back(WeightedEdge{e.u, e.v, Rational(1)});
  }
  return out;
}

long long as_integer(const Rational& r) {
  if (boost::multiprecision::denominator(r) != 1) {
    throw InvariantError("expected an integral cut value");
  }
  return boost::multiprecision::numerator(r).convert_to<long long>();
}

Certificate assemble(const MultiGraph& g0, int k, Algorithm alg,
                     const Rational& cost, const Rational& lp0,
                     const std::vector<WeightedEdge>& chosen_caps,
                     std::vector<LedgerEntry> ledger, int iterations,
                     uint64_t digest) {
  Certificate c;
  c.digest = digest;
  c.algorithm = algorithm_name(alg);
  c.k = k;
  c.n0 = g0.node_count();
  c.m0 = g0.edge_count();
  c.cost = cost;
  c.lp0 = lp0;
  c.iterations = iterations;
  c.ledger = std::move(ledger);

  switch (alg) {
    case Algorithm::Bicriteria1:
      c.connectivity_threshold = std::max(k - 4, 0);
      c.cost_bound = lp0;
      break;
    case Algorithm::Bicriteria2:
      c.connectivity_threshold = std::max(k - 2, 0);
      c.cost_bound = Rational(3, 2) * lp0;
      break;
    case Algorithm::Ecsm:
      c.connectivity_threshold = k;
      c.cost_bound = lp0;
      break;
  }

  if (g0.node_count() == 1) {
    c.mincut_infinite = true;
    c.connectivity_ok = true;
  } else {
    auto [value, cut] = global_min_cut(g0.nodes(), chosen_caps);
    c.mincut = as_integer(value);
    c.connectivity_ok = c.mincut >= c.connectivity_threshold;
  }
  c.cost_ok = c.cost <= c.cost_bound;
  c.ledger_ok = true;
  for (const LedgerEntry& e : c.ledger) {
    if (!e.pass) c.ledger_ok = false;
  }
  c.valid = c.cost_ok && c.connectivity_ok && c.ledger_ok;
  return c;
}

}  // namespace

Certificate certify(const MultiGraph& g0, int k, Algorithm alg,
                    const Solution& sol, std::vector<LedgerEntry> ledger,
                    int iterations, uint64_t digest) {
  Rational cost = 0;
  for (EdgeId id : sol.edges) cost += g0.edge(id).cost;
  if (cost != sol.cost) {
    ledger.push_back(LedgerEntry{"reported_cost_matches", iterations, false,
                                 "recomputed cost disagrees"});
  }
  return assemble(g0, k, alg, cost, sol.lp0, unit_edges(g0, sol.edges),
                  std::move(ledger), iterations, digest);
}

Certificate certify_multiset(const MultiGraph& g0, int k,
                             const EcsmResult& res, uint64_t digest) {
  Rational cost = 0;
  std::vector<WeightedEdge> caps;
  for (const auto& [id, mult] : res.solution.multiplicity) {
    if (mult < 0) throw std::invalid_argument("negative multiplicity");
    const Edge& e = g0.edge(id);
    cost += Rational(mult) * e.cost;
    if (mult > 0) caps.push_back(WeightedEdge{e.u, e.v, Rational(mult)});
  }
  std::vector<LedgerEntry> ledger = res.ledger;
  if (cost != res.solution.cost) {
    ledger.push_back(LedgerEntry{"reported_cost_matches", res.iterations,
                                 false, "recomputed cost disagrees"});
  }
  return assemble(g0, k, Algorithm::Ecsm, cost, res.lp0, caps,
                  std::move(ledger), res.iterations, digest);
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << "kecss-certificate v1\n";
  os << "digest=" << digest << "\n";
  os << "algorithm=" << algorithm << "\n";
  os << "k=" << k << "\n";
  os << "n0=" << n0 << "\n";
  os << "m0=" << m0 << "\n";
  os << "cost=" << format_rational(cost) << "\n";
  os << "lp0=" << format_rational(lp0) << "\n";
  os << "cost_bound=" << format_rational(cost_bound) << "\n";
  os << "mincut=" << (mincut_infinite ? std::string("inf")
                                      : std::to_string(mincut))
     << "\n";
  os << "connectivity_threshold=" << connectivity_threshold << "\n";
  os << "iterations=" << iterations << "\n";
  os << "cost_ok=" << (cost_ok ? 1 : 0) << "\n";
  os << "connectivity_ok=" << (connectivity_ok ? 1 : 0) << "\n";
  os << "ledger_ok=" << (ledger_ok ? 1 : 0) << "\n";
  os << "valid=" << (valid ? 1 : 0) << "\n";
  os << "ledger:\n";
  for (const LedgerEntry& e : ledger) {
    os << e.iteration << " " << e.name << " " << (e.pass ? "pass" : "fail");
    if (!e.detail.empty()) os << " # " << e.detail;
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

namespace {

// Min cut of the subgraph picked out by `mask` over the ordered edge list.
Rational masked_min_cut(const MultiGraph& g0,
                        const std::vector<EdgeId>& order, uint32_t mask) {
  std::vector<WeightedEdge> caps;
  for (size_t i = 0; i < order.size(); ++i) {
    if (mask & (1u << i)) {
      const Edge& e = g0.edge(order[i]);
      caps.push_back(WeightedEdge{e.u, e.v, Rational(1)});
    }
  }
  auto [value, cut] = global_min_cut(g0.nodes(), caps);
  return value;
}

struct BnB {
  const MultiGraph& g;
  std::vector<EdgeId> order;  // ascending (cost, id)
  int k = 0;
  int m = 0;
  bool found = false;
  Rational best_cost;
  uint32_t best_mask = 0;

  // Half the total degree deficiency, each missing edge at least the
  // cheapest remaining cost.
  Rational deficiency_bound(uint32_t chosen, int next) const {
    std::vector<int> deg(g.max_node_id() + 1, 0);
    for (int i = 0; i < m; ++i) {
      if (chosen & (1u << i)) {
        const Edge& e = g.edge(order[i]);
        ++deg[e.u];
        ++deg[e.v];
      }
    }
    int deficiency = 0;
    for (NodeId v : g.nodes()) deficiency += std::max(0, k - deg[v]);
    if (deficiency == 0) return 0;
    Rational cheapest;
    bool have = false;
    for (int i = next; i < m; ++i) {
      const Rational& c = g.edge(order[i]).cost;
      if (!have || c < cheapest) {
        have = true;
        cheapest = c;
      }
    }
    if (!have) return Rational(0);
    return Rational((deficiency + 1) / 2) * cheapest;
  }

  void search(int next, uint32_t chosen, uint32_t available, Rational cost) {
    if (found && cost >= best_cost) return;
    if (g.node_count() >= 2) {
      if (masked_min_cut(g, order, available) < k) return;
      if (masked_min_cut(g, order, chosen) >= k) {
        if (!found || cost < best_cost) {
          found = true;
          best_cost = cost;
          best_mask = chosen;
        }
        return;  // adding edges only adds cost
      }
    }
    if (next == m) return;
    if (found && cost + deficiency_bound(chosen, next) >= best_cost) return;
    uint32_t bit = 1u << next;
    search(next + 1, chosen | bit, available, cost + g.edge(order[next]).cost);
    search(next + 1, chosen, available & ~bit, cost);
  }
};

}  // namespace

BruteForceResult brute_force_opt(const MultiGraph& g0, int k) {
  const std::vector<EdgeId> live = g0.live_edge_ids();
  if (live.size() > 20) {
    throw std::invalid_argument("brute_force_opt instance too large");
  }
  BruteForceResult out;
  if (g0.node_count() == 1 || k == 0) {
    out.feasible = true;
    out.cost = 0;
    return out;
  }

  BnB bnb{g0, live, k, static_cast<int>(live.size())};
  std::stable_sort(bnb.order.begin(), bnb.order.end(),
                   [&](EdgeId a, EdgeId b) {
                     const Rational &ca = g0.edge(a).cost, &cb = g0.edge(b).cost;
                     if (ca != cb) return ca < cb;
                     return a < b;
                   });
  uint32_t all = bnb.m == 32 ? 0xffffffffu : ((1u << bnb.m) - 1u);
  bnb.search(0, 0, all, Rational(0));
  if (!bnb.found) return out;  // infeasible

  out.feasible = true;
  out.cost = bnb.best_cost;
  for (int i = 0; i < bnb.m; ++i) {
    if (bnb.best_mask & (1u << i)) out.edges.push_back(bnb.order[i]);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Rational lp_by_enumeration(const MultiGraph& g0, int k) {
  const int n = g0.node_count();
  if (n > 12) throw std::invalid_argument("lp_by_enumeration instance too large");
  const std::vector<EdgeId> edges = g0.live_edge_ids();
  const int m = static_cast<int>(edges.size());
  if (n < 2) return Rational(0);

  std::vector<int> var_of(g0.max_node_id() >= 0 ? g0.total_edge_count() : 0,
                          -1);
  for (int i = 0; i < m; ++i) var_of[edges[i]] = i;

  const std::vector<NodeId>& nodes = g0.nodes();
  const int words = (m + 63) / 64;

  // Every cut containing nodes[0], as an edge-boundary bitset.
  std::vector<std::vector<uint64_t>> boundaries;
  for (unsigned mask = 1; mask < (1u << n); mask += 2) {
    if (mask == (1u << n) - 1) continue;
    std::vector<char> in(g0.max_node_id() + 1, 0);
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) in[nodes[i]] = 1;
    }
    std::vector<uint64_t> bits(words, 0);
    for (int i = 0; i < m; ++i) {
      const Edge& e = g0.edge(edges[i]);
      if (in[e.u] != in[e.v]) bits[i / 64] |= 1ull << (i % 64);
    }
    boundaries.push_back(std::move(bits));
  }

  // A row whose boundary contains another row's boundary is implied by it
  // (nonnegative variables, equal right-hand sides); dropping it keeps the
  // optimum intact.
  std::sort(boundaries.begin(), boundaries.end());
  boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                   boundaries.end());
  auto subset_of = [&](const std::vector<uint64_t>& a,
                       const std::vector<uint64_t>& b) {
    for (int w = 0; w < words; ++w) {
      if (a[w] & ~b[w]) return false;
    }
    return true;
  };
  std::vector<std::vector<uint64_t>> minimal;
  for (size_t i = 0; i < boundaries.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < boundaries.size() && keep; ++j) {
      if (i == j) continue;
      if (subset_of(boundaries[j], boundaries[i]) &&
          boundaries[j] != boundaries[i]) {
        keep = false;
      }
    }
    if (keep) minimal.push_back(boundaries[i]);
  }

  LinearProgram lp;
  lp.num_vars = m;
  lp.upper.assign(m, Rational(1));
  for (int i = 0; i < m; ++i) lp.objective.push_back(g0.edge(edges[i]).cost);
  for (const auto& bits : minimal) {
    LpRow row;
    row.rhs = k;
    for (int i = 0; i < m; ++i) {
      if (bits[i / 64] & (1ull << (i % 64))) {
        row.coeffs.emplace_back(i, Rational(1));
      }
    }
    lp.rows.push_back(std::move(row));
  }

  LpSolution sol = simplex_solve_from_upper(lp);
  if (sol.status != LpStatus::Optimal) {
    throw InfeasibleError("cut LP infeasible under full enumeration");
  }
  return sol.objective;
}

SandwichReport sandwich_check(const MultiGraph& g0, int k) {
  SandwichReport rep;
  RunResult rr;
  try {
    rr = run_algorithm1(g0, k);
  } catch (const InfeasibleError&) {
    rep.feasible = false;
    rep.ok = true;
    rep.note = "instance infeasible at k; nothing to compare";
    return rep;
  }
  rep.feasible = true;
  rep.cost = rr.solution.cost;

  BruteForceResult upper = brute_force_opt(g0, k);
  if (!upper.feasible) {
    rep.ok = false;
    rep.note = "solver produced a solution on an infeasible instance";
    return rep;
  }
  rep.upper_opt = upper.cost;
  rep.ok = rep.cost <= rep.upper_opt;

  if (k - 4 >= 1) {
    rep.lower_checked = true;
    BruteForceResult lower = brute_force_opt(g0, k - 4);
    rep.lower_opt = lower.feasible ? lower.cost : Rational(0);
    rep.ok = rep.ok && lower.feasible && rep.lower_opt <= rep.cost;
  }
  return rep;
}

}  // namespace kecss
