#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tuple>

#include "helpers.hpp"
#include "kecss/errors.hpp"
#include "kecss/mincut.hpp"

using namespace kecss;
using kecss::testing::Rng;

namespace {

// Exhaustive minimum over the s-side cuts avoiding t.
std::pair<Rational, Cut> brute_st_min_cut(
    const std::vector<NodeId>& nodes,
    const std::vector<WeightedEdge>& edges, NodeId s, NodeId t) {
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
    if (!c.contains(s) || c.contains(t)) continue;
    Rational w = 0;
    for (const WeightedEdge& e : edges) {
      if (c.contains(e.u) != c.contains(e.v)) w += e.cap;
    }
    if (!have || w < best) {
      have = true;
      best = w;
      best_cut = c;
    }
  }
  return {best, best_cut};
}

Rational cut_capacity(const std::vector<WeightedEdge>& edges, const Cut& c) {
  Rational w = 0;
  for (const WeightedEdge& e : edges) {
    if (c.contains(e.u) != c.contains(e.v)) w += e.cap;
  }
  return w;
}

}  // namespace

TEST_CASE("two nodes, one rational edge") {
  FlowNetwork net({0, 1}, {WeightedEdge{0, 1, Rational(3, 2)}});
  auto res = net.max_flow(0, 1);
  CHECK(res.value == Rational(3, 2));
  CHECK(res.min_side.members == std::vector<NodeId>{0});
}

TEST_CASE("path bottleneck") {
  FlowNetwork net({0, 1, 2}, {WeightedEdge{0, 1, Rational(1)},
                              WeightedEdge{1, 2, Rational(2)}});
  auto res = net.max_flow(0, 2);
  CHECK(res.value == 1);
}

TEST_CASE("disconnected endpoints give zero flow and the component") {
  FlowNetwork net({0, 1, 2, 3}, {WeightedEdge{0, 1, Rational(4)}});
  auto res = net.max_flow(0, 2);
  CHECK(res.value == 0);
  CHECK(res.min_side.members == std::vector<NodeId>{0, 1});
}

TEST_CASE("max flow equals the exhaustive minimum cut on random graphs") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform(3, 8);
    MultiGraph g = kecss::testing::random_graph(rng, n, rng.uniform(0, 8));
    std::vector<WeightedEdge> edges;
    for (EdgeId id : g.live_edge_ids()) {
      const Edge& e = g.edge(id);
      edges.push_back(
          WeightedEdge{e.u, e.v, rng.rational(6, 8)});
    }
    FlowNetwork net(g.nodes(), edges);
    NodeId s = 0, t = rng.uniform(1, n - 1);
    auto res = net.max_flow(s, t);
    auto [brute, brute_cut] = brute_st_min_cut(g.nodes(), edges, s, t);
    CHECK(res.value == brute);
    // duality, exactly
    CHECK(cut_capacity(edges, res.min_side) == res.value);
    CHECK(cut_capacity(edges, res.max_side) == res.value);

    // minimality / maximality of the returned sides
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<NodeId> members;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) members.push_back(g.nodes()[i]);
      }
      Cut c(std::move(members));
      if (!c.contains(s) || c.contains(t)) continue;
      if (cut_capacity(edges, c) != res.value) continue;
      // every minimum cut sits between the two returned sides
      for (NodeId v : res.min_side.members) CHECK(c.contains(v));
      for (NodeId v : c.members) CHECK(res.max_side.contains(v));
    }
  }
}

TEST_CASE("global min cut basics") {
  // 5-cycle, unit weights
  std::vector<WeightedEdge> cyc;
  for (int i = 0; i < 5; ++i) cyc.push_back(WeightedEdge{i, (i + 1) % 5, Rational(1)});
  auto [v1, c1] = global_min_cut({0, 1, 2, 3, 4}, cyc);
  CHECK(v1 == 2);

  auto [v2, c2] = global_min_cut(
      {0, 1}, std::vector<WeightedEdge>(5, WeightedEdge{0, 1, Rational(1)}));
  CHECK(v2 == 5);

  CHECK_THROWS_AS(global_min_cut({0}, {}), std::invalid_argument);
}

TEST_CASE("global min cut matches exhaustive enumeration") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform(2, 9);
    MultiGraph g = kecss::testing::random_graph(rng, n, rng.uniform(0, 10));
    std::vector<WeightedEdge> edges;
    std::vector<std::tuple<NodeId, NodeId, Rational>> tuples;
    for (EdgeId id : g.live_edge_ids()) {
      const Edge& e = g.edge(id);
      Rational cap(rng.uniform(0, 6));
      edges.push_back(WeightedEdge{e.u, e.v, cap});
      tuples.emplace_back(e.u, e.v, cap);
    }
    auto [value, cut] = global_min_cut(g.nodes(), edges);
    auto [brute, brute_cut] = kecss::testing::enumerate_min_cut(g.nodes(), tuples);
    CHECK(value == brute);
    CHECK(cut_capacity(edges, cut) == value);
  }
}

namespace {

// Exhaustive separation oracle: any cut with x(boundary) < f?
std::optional<Cut> brute_separate(const SolverState& st,
                                  const std::map<EdgeId, Rational>& x) {
  for (const Cut& c : kecss::testing::all_cuts(st.g)) {
    Rational xb = 0;
    for (EdgeId id : st.fractional_boundary(c)) xb += x.at(id);
    if (xb < Rational(st.eval_f(c))) return c;
  }
  return std::nullopt;
}

// Exhaustive core oracle: inclusion-minimal positive tight cuts.
std::vector<Cut> brute_cores(const SolverState& st,
                             const std::map<EdgeId, Rational>& x) {
  std::vector<Cut> family;
  for (const Cut& c : kecss::testing::all_cuts(st.g)) {
    const int f = st.eval_f(c);
    if (f <= 0) continue;
    const auto bd = st.fractional_boundary(c);
    if (bd.empty()) continue;
    Rational xb = 0;
    for (EdgeId id : bd) xb += x.at(id);
    if (xb != Rational(f)) continue;
    family.push_back(c);
  }
  std::vector<Cut> minimal;
  for (const Cut& a : family) {
    bool keep = true;
    for (const Cut& b : family) {
      if (b.members.size() < a.members.size() &&
          std::includes(a.members.begin(), a.members.end(),
                        b.members.begin(), b.members.end())) {
        keep = false;
        break;
      }
    }
    if (keep) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

std::map<EdgeId, Rational> constant_x(const SolverState& st,
                                      const Rational& v) {
  std::map<EdgeId, Rational> x;
  for (EdgeId id : st.fractional) x[id] = v;
  return x;
}

}  // namespace

TEST_CASE("all-zero x violates a singleton on a connected graph") {
  MultiGraph g(4);
  g.add_edge(0, 1, Rational(1));
  g.add_edge(1, 2, Rational(1));
  g.add_edge(2, 3, Rational(1));
  g.add_edge(3, 0, Rational(1));
  SolverState st = SolverState::initial(g, 2, Algorithm::Bicriteria1);
  auto v = separate(st, constant_x(st, Rational(0)));
  REQUIRE(v.has_value());
  Rational xb = 0;
  CHECK(Rational(st.eval_f(*v)) > xb);
}

TEST_CASE("separate agrees with the exhaustive check on random states") {
  Rng rng(5150);
  int violated_cases = 0, feasible_cases = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = rng.uniform(3, 6);
    MultiGraph g = kecss::testing::random_graph(rng, n, rng.uniform(2, 9));
    const int k = rng.uniform(1, 5);
    SolverState st = SolverState::initial(g, k, Algorithm::Bicriteria1);
    // move a random slice of the edges into the bought set
    std::vector<EdgeId> to_buy;
    for (EdgeId id : st.fractional) {
      if (rng.uniform(0, 2) == 0) to_buy.push_back(id);
    }
    st.move_to_integral(to_buy);
    // a couple of ghost edges between distinct pairs (off the relaxed set,
    // whose invariants these synthetic states do not model)
    for (int h = 0; h < rng.uniform(0, 2); ++h) {
      NodeId a = rng.uniform(0, n - 1), b = rng.uniform(0, n - 1);
      if (a == b || st.ghost_pair_degree(a, b) > 0) continue;
      st.ghosts.push_back(GhostEdge{a, b, {}, false});
    }
    if (st.fractional.empty()) continue;
    std::map<EdgeId, Rational> x;
    for (EdgeId id : st.fractional) x[id] = rng.rational(8, 8);
    for (auto& [id, val] : x) {
      if (val > 1) val = 1;
    }

    auto mine = separate(st, x);
    auto brute = brute_separate(st, x);
    CHECK(mine.has_value() == brute.has_value());
    if (mine) {
      ++violated_cases;
      Rational xb = 0;
      for (EdgeId id : st.fractional_boundary(*mine)) xb += x.at(id);
      CHECK(xb < Rational(st.eval_f(*mine)));
    } else {
      ++feasible_cases;
    }
  }
  CHECK(violated_cases > 10);
  CHECK(feasible_cases > 10);
}

TEST_CASE("find_cores rejects non-fractional inputs") {
  MultiGraph g(2);
  g.add_edge(0, 1, Rational(1));
  SolverState st = SolverState::initial(g, 1, Algorithm::Bicriteria1);
  CHECK_THROWS_AS(find_cores(st, constant_x(st, Rational(1))), InvariantError);
}

TEST_CASE("a hand-built tight set is the reported core") {
  // k=4; the set {0,1,2} has three bought edges leaving it and fractional
  // boundary mass exactly 1.
  MultiGraph g(5);
  std::vector<EdgeId> bought;
  bought.push_back(g.add_edge(0, 3, Rational(1)));
  bought.push_back(g.add_edge(0, 3, Rational(1)));
  bought.push_back(g.add_edge(0, 3, Rational(1)));
  // interior support so no single node is tight
  bought.push_back(g.add_edge(0, 1, Rational(1)));
  bought.push_back(g.add_edge(0, 1, Rational(1)));
  bought.push_back(g.add_edge(0, 2, Rational(1)));
  bought.push_back(g.add_edge(0, 2, Rational(1)));
  bought.push_back(g.add_edge(1, 2, Rational(1)));
  bought.push_back(g.add_edge(1, 2, Rational(1)));
  bought.push_back(g.add_edge(3, 4, Rational(1)));
  bought.push_back(g.add_edge(3, 4, Rational(1)));
  bought.push_back(g.add_edge(3, 4, Rational(1)));
  bought.push_back(g.add_edge(3, 4, Rational(1)));
  EdgeId f1 = g.add_edge(1, 4, Rational(1));
  EdgeId f2 = g.add_edge(2, 4, Rational(1));

  SolverState st = SolverState::initial(g, 4, Algorithm::Bicriteria1);
  st.move_to_integral(bought);
  std::map<EdgeId, Rational> x{{f1, Rational(1, 2)}, {f2, Rational(1, 2)}};

  REQUIRE_FALSE(separate(st, x).has_value());  // x is feasible
  auto cores = find_cores(st, x);
  auto oracle = brute_cores(st, x);

  std::vector<Cut> got;
  for (const auto& c : cores) got.push_back(c.members);
  std::sort(got.begin(), got.end());
  CHECK(got == oracle);

  Cut triangle({std::vector<NodeId>{0, 1, 2}});
  CHECK(std::find(got.begin(), got.end(), triangle) != got.end());
  for (const auto& c : cores) {
    CHECK(c.x_boundary == Rational(c.f_value));
    CHECK(c.f_value > 0);
  }
  // antichain: no returned set contains another
  for (const auto& a : cores) {
    for (const auto& b : cores) {
      if (a.members == b.members) continue;
      CHECK_FALSE(std::includes(a.members.members.begin(),
                                a.members.members.end(),
                                b.members.members.begin(),
                                b.members.members.end()));
    }
  }
}

TEST_CASE("a relaxed singleton at capacity k is not a core") {
  // k=4, node 0 relaxed with two bought edges (so its requirement is
  // already nonpositive) and fractional boundary mass 2: capacity exactly k
  // but not positive-tight.
  MultiGraph g(4);
  std::vector<EdgeId> bought;
  bought.push_back(g.add_edge(0, 1, Rational(1)));
  bought.push_back(g.add_edge(0, 1, Rational(1)));
  // keep the rest of the graph comfortably above k
  for (int rep = 0; rep < 5; ++rep) {
    bought.push_back(g.add_edge(1, 2, Rational(1)));
    bought.push_back(g.add_edge(2, 3, Rational(1)));
    bought.push_back(g.add_edge(1, 3, Rational(1)));
  }
  std::vector<EdgeId> frac;
  for (int i = 0; i < 4; ++i) frac.push_back(g.add_edge(0, 2, Rational(1)));

  SolverState st = SolverState::initial(g, 4, Algorithm::Bicriteria1);
  st.move_to_integral(bought);
  st.relaxed.insert(0);
  std::map<EdgeId, Rational> x;
  for (EdgeId id : frac) x[id] = Rational(1, 2);

  REQUIRE_FALSE(separate(st, x).has_value());
  // capacity of {0} is 2 bought + 2 fractional = k
  Cut zero({std::vector<NodeId>{0}});
  CHECK(st.chosen_degree(zero) + 2 == 4);
  auto cores = find_cores(st, x);
  for (const auto& c : cores) {
    CHECK(c.members.members != std::vector<NodeId>{0});
  }
  auto oracle = brute_cores(st, x);
  std::vector<Cut> got;
  for (const auto& c : cores) got.push_back(c.members);
  std::sort(got.begin(), got.end());
  CHECK(got == oracle);
}

TEST_CASE("find_cores matches the exhaustive oracle on random feasible states") {
  Rng rng(9001);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    const int n = rng.uniform(3, 6);
    MultiGraph g = kecss::testing::random_graph(rng, n, rng.uniform(3, 10));
    const int k = rng.uniform(2, 5);
    SolverState st = SolverState::initial(g, k, Algorithm::Bicriteria1);
    std::vector<EdgeId> to_buy;
    for (EdgeId id : st.fractional) {
      if (rng.uniform(0, 2) != 0) to_buy.push_back(id);
    }
    st.move_to_integral(to_buy);
    if (st.fractional.empty()) continue;
    std::map<EdgeId, Rational> x;
    for (EdgeId id : st.fractional) {
      x[id] = Rational(rng.uniform(1, 3), rng.uniform(4, 8));
      if (x[id] >= 1) x[id] = Rational(1, 2);
    }
    if (separate(st, x)) continue;  // need feasible x
    ++checked;
    auto cores = find_cores(st, x);
    std::vector<Cut> got;
    for (const auto& c : cores) got.push_back(c.members);
    std::sort(got.begin(), got.end());
    CHECK(got == brute_cores(st, x));
  }
  CHECK(checked >= 20);
}
