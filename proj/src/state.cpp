#include "kecss/state.hpp"

#include <algorithm>
#include <stdexcept>

#include "kecss/errors.hpp"

namespace kecss {

std::string algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::Bicriteria1:
      return "bicriteria1";
    case Algorithm::Bicriteria2:
      return "bicriteria2";
    case Algorithm::Ecsm:
      return "ecsm";
  }
  return "?";
}

int ghost_support_threshold(int k, Algorithm alg) {
  return alg == Algorithm::Bicriteria2 ? ceil_div(k - 1, 2)
                                       : ceil_div(k - 3, 2);
}

SolverState SolverState::initial(MultiGraph g0, int k, Algorithm alg) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  SolverState st;
  st.g = std::move(g0);
  st.fractional = st.g.live_edge_ids();
  st.k = k;
  st.alg = alg;
  st.mu = ghost_support_threshold(k, alg);
  return st;
}

int SolverState::ghost_weight() const {
  return alg == Algorithm::Bicriteria2 ? 1 : 2;
}

Rational SolverState::rounding_threshold() const {
  return alg == Algorithm::Bicriteria2 ? Rational(2, 3) : Rational(1);
}

int SolverState::singleton_relaxation() const {
  return alg == Algorithm::Bicriteria2 ? 1 : 2;
}

int SolverState::chosen_degree(const Cut& s) const {
  return g.cut_degree(integral, s);
}

int SolverState::fractional_degree(const Cut& s) const {
  return g.cut_degree(fractional, s);
}

int SolverState::ghost_degree(const Cut& s) const {
  int count = 0;
  for (const GhostEdge& h : ghosts) {
    if (h.dead) continue;
    if (s.contains(h.a) != s.contains(h.b)) ++count;
  }
  return count;
}

int SolverState::ghost_node_degree(NodeId v) const {
  int count = 0;
  for (const GhostEdge& h : ghosts) {
    if (h.dead) continue;
    if ((h.a == v) != (h.b == v)) ++count;
  }
  return count;
}

int SolverState::chosen_pair_degree(NodeId u, NodeId v) const {
  return g.pair_degree(integral, u, v);
}

int SolverState::ghost_pair_degree(NodeId u, NodeId v) const {
  int count = 0;
  for (const GhostEdge& h : ghosts) {
    if (h.dead) continue;
    if ((h.a == u && h.b == v) || (h.a == v && h.b == u)) ++count;
  }
  return count;
}

std::vector<EdgeId> SolverState::chosen_pair_edges(NodeId u, NodeId v) const {
  return g.pair_edges(integral, u, v);
}

std::vector<EdgeId> SolverState::fractional_boundary(const Cut& s) const {
  return g.boundary(fractional, s);
}

bool SolverState::relaxed_singleton(const Cut& s) const {
  const int n = g.node_count();
  if (s.members.size() == 1) {
    if (relaxed.count(s.members[0])) return true;
  }
  if (static_cast<int>(s.members.size()) == n - 1) {
    for (NodeId v : g.nodes()) {
      if (!s.contains(v)) return relaxed.count(v) > 0;
    }
  }
  return false;
}

int SolverState::eval_f(const Cut& s) const {
  g.validate_cut(s);
  int value = k - chosen_degree(s) - ghost_weight() * ghost_degree(s);
  if (relaxed_singleton(s)) value -= singleton_relaxation();
  return value;
}

namespace {

void remove_sorted(std::vector<EdgeId>& from, const std::vector<EdgeId>& ids,
                   const char* what) {
  for (EdgeId id : ids) {
    auto it = std::lower_bound(from.begin(), from.end(), id);
    if (it == from.end() || *it != id) {
      throw InvariantError(std::string("edge is not ") + what);
    }
    from.erase(it);
  }
}

void insert_sorted(std::vector<EdgeId>& into, const std::vector<EdgeId>& ids) {
  for (EdgeId id : ids) {
    auto it = std::lower_bound(into.begin(), into.end(), id);
    into.insert(it, id);
  }
}

}  // namespace

void SolverState::move_to_integral(const std::vector<EdgeId>& edges) {
  remove_sorted(fractional, edges, "fractional");
  insert_sorted(integral, edges);
}

void SolverState::drop_edges(const std::vector<EdgeId>& edges) {
  remove_sorted(fractional, edges, "fractional");
  insert_sorted(dropped, edges);
}

Rational SolverState::integral_cost() const { return g.cost_of(integral); }

}  // namespace kecss
