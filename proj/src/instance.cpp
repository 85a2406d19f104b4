#include "kecss/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "kecss/errors.hpp"
#include "kecss/mincut.hpp"

namespace kecss {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected an integer for ") + what);
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int n = 0, m = 0, k = 0;
  Instance inst;
  int edges_seen = 0;

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 5 || toks[1] != "kecss") {
        throw ParseError(lineno, "header must be `p kecss <n> <m> <k>`");
      }
      n = parse_int(toks[2], lineno, "n");
      m = parse_int(toks[3], lineno, "m");
      k = parse_int(toks[4], lineno, "k");
      if (n < 1) throw ParseError(lineno, "need at least one node");
      if (m < 0) throw ParseError(lineno, "negative edge count");
      if (k < 1) throw ParseError(lineno, "k must be at least 1");
      inst.graph = MultiGraph(n);
      inst.k = k;
      have_header = true;
    } else if (toks[0] == "e") {
      if (!have_header) throw ParseError(lineno, "edge before header");
      if (toks.size() != 4) {
        throw ParseError(lineno, "edge line must be `e <u> <v> <cost>`");
      }
      int u = parse_int(toks[1], lineno, "u");
      int v = parse_int(toks[2], lineno, "v");
      if (u < 1 || u > n || v < 1 || v > n) {
        throw ParseError(lineno, "node index out of range");
      }
      if (u == v) throw ParseError(lineno, "self-loop");
      auto cost = parse_rational(toks[3]);
      if (!cost || *cost < 0) {
        throw ParseError(lineno, "cost must be a nonnegative rational");
      }
      if (edges_seen == m) throw ParseError(lineno, "more edges than declared");
      inst.graph.add_edge(u - 1, v - 1, *cost);
      ++edges_seen;
    } else {
      throw ParseError(lineno, "unknown record `" + toks[0] + "`");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (edges_seen != m) {
    throw ParseError(lineno, "declared " + std::to_string(m) + " edges, got " +
                                 std::to_string(edges_seen));
  }
  return inst;
}

std::string emit_instance(const Instance& inst,
                          const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const std::string& c : comments) os << "# " << c << "\n";
  const auto ids = inst.graph.live_edge_ids();
  os << "p kecss " << inst.graph.node_count() << " " << ids.size() << " "
     << inst.k << "\n";
  for (EdgeId id : ids) {
    const Edge& e = inst.graph.edge(id);
    os << "e " << e.u + 1 << " " << e.v + 1 << " " << format_rational(e.cost)
       << "\n";
  }
  return os.str();
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t instance_digest(const Instance& inst) {
  return fnv1a64(emit_instance(inst));
}

namespace {

// mt19937_64 emits a standardized stream; the bounded draw below uses
// rejection sampling so generated files are identical everywhere.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}

  uint64_t raw() { return eng(); }

  int uniform(int lo, int hi) {
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t r;
    do {
      r = eng();
    } while (r >= limit);
    return lo + static_cast<int>(r % range);
  }

  bool bernoulli(const Rational& p) {
    const BigInt den = boost::multiprecision::denominator(p);
    const BigInt num = boost::multiprecision::numerator(p);
    if (num <= 0) return false;
    if (num >= den) return true;
    const int d = den.convert_to<int>();
    return uniform(0, d - 1) < num.convert_to<int>();
  }
};

}  // namespace

Instance generate_instance(const std::string& family, const GenParams& params,
                           uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.k = params.k;
  const int cmax = std::max(1, params.c_max);

  if (family == "gnp") {
    if (params.n < 2) throw std::invalid_argument("gnp needs n >= 2");
    inst.graph = MultiGraph(params.n);
    for (int u = 0; u < params.n; ++u) {
      for (int v = u + 1; v < params.n; ++v) {
        if (rng.bernoulli(params.p)) {
          inst.graph.add_edge(u, v, Rational(rng.uniform(1, cmax)));
        }
      }
    }
  } else if (family == "multi-cycle") {
    if (params.n < 3) throw std::invalid_argument("multi-cycle needs n >= 3");
    if (params.dup < 1) throw std::invalid_argument("dup must be positive");
    inst.graph = MultiGraph(params.n);
    for (int i = 0; i < params.n; ++i) {
      int u = i, v = (i + 1) % params.n;
      for (int d = 0; d < params.dup; ++d) {
        inst.graph.add_edge(u, v, Rational(rng.uniform(1, cmax)));
      }
    }
  } else if (family == "theta") {
    if (params.paths < 2 || params.path_len < 1) {
      throw std::invalid_argument("theta needs >= 2 paths of length >= 1");
    }
    // Each hop is a parallel bundle so interior nodes can reach degree k;
    // the cheap bundles between the hubs are what drives ghost edges once
    // the interior cores contract.
    const int bundle = std::max(1, ceil_div(params.k, 2));
    inst.graph = MultiGraph(2);
    for (int p = 0; p < params.paths; ++p) {
      NodeId prev = 0;
      for (int step = 0; step + 1 < params.path_len; ++step) {
        NodeId mid = inst.graph.add_node();
        for (int b = 0; b < bundle; ++b) {
          inst.graph.add_edge(prev, mid, Rational(rng.uniform(1, cmax)));
        }
        prev = mid;
      }
      for (int b = 0; b < bundle; ++b) {
        inst.graph.add_edge(prev, 1, Rational(rng.uniform(1, cmax)));
      }
    }
  } else if (family == "clique") {
    if (params.n < 2) throw std::invalid_argument("clique needs n >= 2");
    inst.graph = MultiGraph(params.n);
    for (int u = 0; u < params.n; ++u) {
      for (int v = u + 1; v < params.n; ++v) {
        inst.graph.add_edge(u, v, Rational(rng.uniform(1, cmax)));
      }
    }
  } else {
    throw std::invalid_argument("unknown family `" + family + "`");
  }
  return inst;
}

std::string generate_instance_text(const std::string& family,
                                   const GenParams& params, uint64_t seed) {
  Instance inst = generate_instance(family, params, seed);
  std::vector<std::string> comments;
  comments.push_back("family=" + family + " seed=" + std::to_string(seed));
  if (inst.graph.node_count() >= 2) {
    std::vector<WeightedEdge> caps;
    for (EdgeId id : inst.graph.live_edge_ids()) {
      const Edge& e = inst.graph.edge(id);
      caps.push_back(WeightedEdge{e.u, e.v, Rational(1)});
    }
    auto [value, cut] = global_min_cut(inst.graph.nodes(), caps);
    if (value < inst.k) {
      comments.push_back("warning: graph min cut " + format_rational(value) +
                         " < k=" + std::to_string(inst.k) +
                         "; instance is infeasible");
    }
  }
  return emit_instance(inst, comments);
}

std::string emit_solution(const SolutionFile& sol, const MultiGraph& g0) {
  std::ostringstream os;
  os << "kecss-solution v1\n";
  os << "algorithm=" << sol.algorithm << "\n";
  os << "k=" << sol.k << "\n";
  os << "cost=" << format_rational(sol.cost) << "\n";
  os << "lp0=" << format_rational(sol.lp0) << "\n";
  if (sol.algorithm == "ecsm") {
    os << "multiplicities=" << sol.multiplicity.size() << "\n";
    for (const auto& [id, mult] : sol.multiplicity) {
      os << "m " << id << " " << mult << "\n";
    }
  } else {
    os << "edges=" << sol.edges.size() << "\n";
    for (EdgeId id : sol.edges) {
      const Edge& e = g0.edge(id);
      os << "e " << id << " " << e.u + 1 << " " << e.v + 1 << " "
         << format_rational(e.cost) << "\n";
    }
  }
  os << "total " << format_rational(sol.cost) << "\n";
  return os.str();
}

SolutionFile parse_solution(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  SolutionFile sol;
  bool have_magic = false;

  auto value_of = [&](const std::string& l) {
    return l.substr(l.find('=') + 1);
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!have_magic) {
      if (line != "kecss-solution v1") {
        throw ParseError(lineno, "not a kecss solution file");
      }
      have_magic = true;
      continue;
    }
    if (line.rfind("algorithm=", 0) == 0) {
      sol.algorithm = value_of(line);
    } else if (line.rfind("k=", 0) == 0) {
      sol.k = parse_int(value_of(line), lineno, "k");
    } else if (line.rfind("cost=", 0) == 0) {
      auto v = parse_rational(value_of(line));
      if (!v) throw ParseError(lineno, "bad cost");
      sol.cost = *v;
    } else if (line.rfind("lp0=", 0) == 0) {
      auto v = parse_rational(value_of(line));
      if (!v) throw ParseError(lineno, "bad lp0");
      sol.lp0 = *v;
    } else if (line.rfind("edges=", 0) == 0 ||
               line.rfind("multiplicities=", 0) == 0) {
      continue;
    } else if (line.rfind("e ", 0) == 0) {
      auto toks = split_ws(line);
      if (toks.size() != 5) throw ParseError(lineno, "bad edge record");
      sol.edges.push_back(parse_int(toks[1], lineno, "edge id"));
    } else if (line.rfind("m ", 0) == 0) {
      auto toks = split_ws(line);
      if (toks.size() != 3) throw ParseError(lineno, "bad multiplicity record");
      sol.multiplicity[parse_int(toks[1], lineno, "edge id")] =
          parse_int(toks[2], lineno, "multiplicity");
    } else if (line.rfind("total ", 0) == 0) {
      continue;
    } else {
      throw ParseError(lineno, "unknown solution record");
    }
  }
  if (!have_magic) throw ParseError(lineno, "empty solution file");
  std::sort(sol.edges.begin(), sol.edges.end());
  return sol;
}

}  // namespace kecss
