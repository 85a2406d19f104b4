#include "kecss/mincut.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "kecss/errors.hpp"

namespace kecss {

FlowNetwork::FlowNetwork(std::vector<NodeId> nodes,
                         const std::vector<WeightedEdge>& edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty()) throw std::invalid_argument("flow network needs nodes");
  NodeId max_id = nodes_.back();
  index_of_.assign(max_id + 1, -1);
  for (size_t i = 0; i < nodes_.size(); ++i) index_of_[nodes_[i]] = static_cast<int>(i);
  adj_.resize(nodes_.size());

  for (const WeightedEdge& e : edges) {
    if (e.cap < 0) throw std::invalid_argument("negative capacity");
    if (e.u == e.v) continue;  // loops carry nothing across any cut
    if (e.u < 0 || e.u > max_id || e.v < 0 || e.v > max_id ||
        index_of_[e.u] < 0 || index_of_[e.v] < 0) {
      throw std::invalid_argument("capacity edge endpoint not in node set");
    }
    int a = index_of_[e.u], b = index_of_[e.v];
    adj_[a].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{b, Rational(0)});
    caps_.push_back(e.cap);
    adj_[b].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{a, Rational(0)});
    caps_.push_back(e.cap);
  }
}

FlowNetwork::Result FlowNetwork::max_flow(NodeId s, NodeId t,
                                          const Rational* stop_above) {
  if (s == t) throw std::invalid_argument("max_flow needs distinct endpoints");
  if (s < 0 || s >= static_cast<NodeId>(index_of_.size()) || index_of_[s] < 0 ||
      t < 0 || t >= static_cast<NodeId>(index_of_.size()) || index_of_[t] < 0) {
    throw std::invalid_argument("max_flow endpoint not in node set");
  }
  const int si = index_of_[s], ti = index_of_[t];
  const int n = static_cast<int>(nodes_.size());

  for (size_t i = 0; i < arcs_.size(); ++i) arcs_[i].residual = caps_[i];

  Result res;
  res.value = 0;
  std::vector<int> parent_arc(n);
  for (;;) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[si] = -2;
    std::deque<int> queue{si};
    bool reached = false;
    while (!queue.empty() && !reached) {
      int y = queue.front();
      queue.pop_front();
      for (int ai : adj_[y]) {
        const Arc& a = arcs_[ai];
        if (a.residual == 0 || parent_arc[a.to] != -1) continue;
        parent_arc[a.to] = ai;
        if (a.to == ti) {
          reached = true;
          break;
        }
        queue.push_back(a.to);
      }
    }
    if (!reached) break;

    Rational bottleneck;
    bool first = true;
    for (int y = ti; y != si;) {
      const Arc& a = arcs_[parent_arc[y]];
      if (first || a.residual < bottleneck) bottleneck = a.residual;
      first = false;
      y = arcs_[parent_arc[y] ^ 1].to;
    }
    for (int y = ti; y != si;) {
      int ai = parent_arc[y];
      arcs_[ai].residual -= bottleneck;
      arcs_[ai ^ 1].residual += bottleneck;
      y = arcs_[ai ^ 1].to;
    }
    res.value += bottleneck;
    if (stop_above && res.value > *stop_above) {
      res.capped = true;
      return res;
    }
  }

  // Inclusion-minimal source side: residual reachability from s.
  std::vector<char> from_s(n, 0);
  from_s[si] = 1;
  std::deque<int> queue{si};
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    for (int ai : adj_[y]) {
      const Arc& a = arcs_[ai];
      if (a.residual == 0 || from_s[a.to]) continue;
      from_s[a.to] = 1;
      queue.push_back(a.to);
    }
  }
  // Inclusion-maximal source side: everything that cannot reach t.
  std::vector<char> to_t(n, 0);
  to_t[ti] = 1;
  queue = {ti};
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    for (int ai : adj_[y]) {
      if (arcs_[ai ^ 1].residual == 0) continue;  // arc into y
      int z = arcs_[ai].to;
      if (to_t[z]) continue;
      to_t[z] = 1;
      queue.push_back(z);
    }
  }

  std::vector<NodeId> min_side, max_side;
  for (int i = 0; i < n; ++i) {
    if (from_s[i]) min_side.push_back(nodes_[i]);
    if (!to_t[i]) max_side.push_back(nodes_[i]);
  }
  res.min_side = Cut(std::move(min_side));
  res.max_side = Cut(std::move(max_side));
  return res;
}

std::vector<WeightedEdge> capacity_assignment(
    const SolverState& st, const std::map<EdgeId, Rational>& x) {
  std::vector<WeightedEdge> out;
  for (EdgeId id : st.fractional) {
    const Edge& e = st.g.edge(id);
    auto it = x.find(id);
    if (it == x.end()) {
      throw InvariantError("capacity assignment: missing x value");
    }
    out.push_back(WeightedEdge{e.u, e.v, it->second});
  }
  for (EdgeId id : st.integral) {
    const Edge& e = st.g.edge(id);
    if (e.internal) continue;
    out.push_back(WeightedEdge{e.u, e.v, Rational(1)});
  }
  const Rational gw(st.ghost_weight());
  for (const GhostEdge& h : st.ghosts) {
    if (h.dead) continue;
    out.push_back(WeightedEdge{h.a, h.b, gw});
  }
  return out;
}

std::pair<Rational, Cut> global_min_cut(
    const std::vector<NodeId>& nodes, const std::vector<WeightedEdge>& edges) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("global min cut needs at least two nodes");
  }
  FlowNetwork net(nodes, edges);
  const auto& vs = net.nodes();
  NodeId root = vs.front();
  bool have = false;
  Rational best;
  Cut best_cut;
  for (NodeId t : vs) {
    if (t == root) continue;
    auto res = net.max_flow(root, t);
    if (!have || res.value < best) {
      have = true;
      best = res.value;
      best_cut = res.min_side;
    }
  }
  return {best, best_cut};
}

namespace {

// Node identification for the side-forcing searches. Representatives are the
// nodes named as targets of merge().
class Merger {
 public:
  explicit Merger(const std::vector<NodeId>& nodes) : nodes_(nodes) {
    NodeId max_id = *std::max_element(nodes.begin(), nodes.end());
    rep_.assign(max_id + 1, -1);
    for (NodeId v : nodes) rep_[v] = v;
  }

  void merge(NodeId from, NodeId into) {
    for (NodeId& r : rep_) {
      if (r == from) r = rep_[into];
    }
  }

  std::vector<NodeId> reduced_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v : nodes_) {
      if (rep_[v] == v) out.push_back(v);
    }
    return out;
  }

  std::vector<WeightedEdge> reduced_edges(
      const std::vector<WeightedEdge>& edges) const {
    std::vector<WeightedEdge> out;
    for (const WeightedEdge& e : edges) {
      NodeId u = rep_[e.u], v = rep_[e.v];
      if (u == v) continue;
      out.push_back(WeightedEdge{u, v, e.cap});
    }
    return out;
  }

  Cut expand(const Cut& reduced) const {
    std::vector<NodeId> out;
    for (NodeId v : nodes_) {
      if (reduced.contains(rep_[v])) out.push_back(v);
    }
    return Cut(std::move(out));
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<NodeId> rep_;
};

Rational node_capacity(const std::vector<WeightedEdge>& edges, NodeId v) {
  Rational w = 0;
  for (const WeightedEdge& e : edges) {
    if ((e.u == v) != (e.v == v)) w += e.cap;
  }
  return w;
}

}  // namespace

std::optional<Cut> separate(const SolverState& st,
                            const std::map<EdgeId, Rational>& x) {
  const std::vector<NodeId>& nodes = st.g.nodes();
  const int n = static_cast<int>(nodes.size());
  if (n < 2) return std::nullopt;
  const auto edges = capacity_assignment(st, x);
  const Rational kr(st.k);

  auto exempt = [&st](const Cut& c) { return st.relaxed_singleton(c); };

  // Single nodes first; their complements carry the same constraint.
  for (NodeId v : nodes) {
    Cut c({std::vector<NodeId>{v}});
    if (exempt(c)) continue;
    if (node_capacity(edges, v) < kr) return c;
  }
  if (n == 2) return std::nullopt;

  FlowNetwork net(nodes, edges);
  NodeId root = nodes.front();
  for (NodeId v : nodes) {
    if (!st.relaxed.count(v)) {
      root = v;
      break;
    }
  }

  for (NodeId t : nodes) {
    if (t == root) continue;
    auto res = net.max_flow(root, t, &kr);
    if (res.capped || res.value >= kr) continue;
    if (!exempt(res.min_side)) return res.min_side;
    if (!exempt(res.max_side)) return res.max_side;
    // Every sub-k cut seen so far has an exempt side. Force a second node
    // onto the root side; a violated cut hiding behind the exemptions must
    // contain one.
    for (NodeId u : nodes) {
      if (u == root || u == t) continue;
      Merger mg(nodes);
      mg.merge(u, root);
      FlowNetwork forced(mg.reduced_nodes(), mg.reduced_edges(edges));
      auto r2 = forced.max_flow(root, t, &kr);
      if (r2.capped || r2.value >= kr) continue;
      Cut cand = mg.expand(r2.min_side);
      if (!exempt(cand)) return cand;
      // Only the complement singleton {t} can still be exempt here; pin a
      // second node onto the t side as well.
      for (NodeId w : nodes) {
        if (w == root || w == t || w == u) continue;
        Merger mg2(nodes);
        mg2.merge(u, root);
        mg2.merge(w, t);
        FlowNetwork forced2(mg2.reduced_nodes(), mg2.reduced_edges(edges));
        auto r3 = forced2.max_flow(root, t, &kr);
        if (r3.capped || r3.value >= kr) continue;
        return mg2.expand(r3.min_side);
      }
    }
  }
  return std::nullopt;
}

std::vector<CoreCandidate> find_cores(const SolverState& st,
                                      const std::map<EdgeId, Rational>& x) {
  const Rational threshold = st.rounding_threshold();
  for (EdgeId id : st.fractional) {
    const Rational& val = x.at(id);
    if (val <= 0 || val >= threshold) {
      throw InvariantError("find_cores needs strictly fractional values");
    }
  }

  const std::vector<NodeId>& nodes = st.g.nodes();
  const int n = static_cast<int>(nodes.size());
  std::vector<CoreCandidate> out;
  if (n < 2) return out;

  const auto edges = capacity_assignment(st, x);
  const Rational kr(st.k);
  auto exempt = [&st](const Cut& c) { return st.relaxed_singleton(c); };

  std::vector<Cut> candidates;
  std::set<Cut> seen;
  auto add_candidate = [&](const Cut& c) {
    if (c.members.empty() ||
        static_cast<int>(c.members.size()) >= n) {
      return;
    }
    if (exempt(c)) return;
    if (seen.insert(c).second) candidates.push_back(c);
  };

  // Capacity-k single nodes and their complements.
  for (NodeId v : nodes) {
    if (node_capacity(edges, v) != kr) continue;
    Cut c({std::vector<NodeId>{v}});
    if (st.fractional_degree(c) == 0) continue;
    add_candidate(c);
    add_candidate(st.g.complement(c));
  }

  // Ordered endpoint pairs of undecided edges, ascending edge id.
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::set<std::pair<NodeId, NodeId>> pair_seen;
  for (EdgeId id : st.fractional) {
    const Edge& e = st.g.edge(id);
    for (auto [s, t] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (pair_seen.insert({s, t}).second) pairs.push_back({s, t});
    }
  }

  FlowNetwork net(nodes, edges);
  for (auto [s, t] : pairs) {
    auto res = net.max_flow(s, t, &kr);
    if (res.capped || res.value > kr) continue;
    if (res.value == kr && !exempt(res.min_side)) {
      // The unique minimal min cut; every other capacity-k cut between this
      // pair strictly contains it.
      add_candidate(res.min_side);
      continue;
    }
    // The minimal min cut is exempt, or all min cuts sit below k behind an
    // exemption. Force a second node onto the source side.
    for (NodeId u : nodes) {
      if (u == s || u == t) continue;
      Merger mg(nodes);
      mg.merge(u, s);
      FlowNetwork forced(mg.reduced_nodes(), mg.reduced_edges(edges));
      auto r2 = forced.max_flow(s, t, &kr);
      if (r2.capped || r2.value > kr) continue;
      if (r2.value == kr) {
        Cut cand = mg.expand(r2.min_side);
        if (!exempt(cand)) add_candidate(cand);
        continue;
      }
      // Still below k: the blocking cut is the exempt complement of {t}.
      for (NodeId w : nodes) {
        if (w == s || w == t || w == u) continue;
        Merger mg2(nodes);
        mg2.merge(u, s);
        mg2.merge(w, t);
        FlowNetwork forced2(mg2.reduced_nodes(), mg2.reduced_edges(edges));
        auto r3 = forced2.max_flow(s, t, &kr);
        if (r3.capped || r3.value > kr) continue;
        if (r3.value < kr) {
          throw InvariantError(
              "find_cores: sub-k cut with both sides unrelaxed; x was not "
              "feasible");
        }
        add_candidate(mg2.expand(r3.min_side));
      }
    }
  }

  // Direct recheck, then the antichain: the survivors are exactly the
  // inclusion-minimal positive tight cuts.
  std::vector<CoreCandidate> checked;
  for (const Cut& c : candidates) {
    const int f = st.eval_f(c);
    if (f <= 0) continue;
    const auto bd = st.fractional_boundary(c);
    if (bd.empty()) continue;
    Rational xb = 0;
    for (EdgeId id : bd) xb += x.at(id);
    if (xb != Rational(f)) continue;
    CoreCandidate cc;
    cc.members = c;
    cc.fractional_degree = static_cast<int>(bd.size());
    cc.f_value = f;
    cc.x_boundary = xb;
    cc.ghost_degree = st.ghost_degree(c);
    cc.chosen_degree = st.chosen_degree(c);
    cc.w_capacity = xb + Rational(cc.chosen_degree) +
                    Rational(st.ghost_weight() * cc.ghost_degree);
    checked.push_back(std::move(cc));
  }

  for (size_t i = 0; i < checked.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < checked.size() && minimal; ++j) {
      if (i == j) continue;
      const auto& a = checked[j].members.members;
      const auto& b = checked[i].members.members;
      if (a.size() < b.size() &&
          std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        minimal = false;
      }
    }
    if (minimal) out.push_back(checked[i]);
  }
  return out;
}

}  // namespace kecss
