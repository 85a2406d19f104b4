#include <chrono>
#include <random>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kecss/bicriteria.hpp"
#include "kecss/ecsm.hpp"
#include "kecss/errors.hpp"
#include "kecss/instance.hpp"
#include "kecss/verify.hpp"

namespace {

using namespace kecss;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvariant = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path == "-" || path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

Algorithm algorithm_from(const std::string& name) {
  if (name == "bicriteria1") return Algorithm::Bicriteria1;
  if (name == "bicriteria2") return Algorithm::Bicriteria2;
  if (name == "ecsm") return Algorithm::Ecsm;
  throw std::runtime_error("unknown algorithm " + name);
}

struct SolveOutput {
  SolutionFile solution;
  Certificate certificate;
};

SolveOutput run_solver(const Instance& inst, Algorithm alg, bool trace) {
  RunOptions opt;
  if (trace) {
    opt.trace_sink = [](const std::string& line) {
      std::cerr << "# " << line << "\n";
    };
  }
  SolveOutput out;
  const uint64_t digest = instance_digest(inst);
  if (alg == Algorithm::Ecsm) {
    EcsmResult res = solve_ecsm(inst.graph, inst.k, opt);
    out.certificate = certify_multiset(inst.graph, inst.k, res, digest);
    out.solution.algorithm = "ecsm";
    out.solution.k = inst.k;
    out.solution.cost = res.solution.cost;
    out.solution.lp0 = res.lp0;
    out.solution.multiplicity = res.solution.multiplicity;
  } else {
    RunResult rr = alg == Algorithm::Bicriteria1
                       ? run_algorithm1(inst.graph, inst.k, opt)
                       : run_algorithm2(inst.graph, inst.k, opt);
    out.certificate = certify(inst.graph, inst.k, alg, rr.solution,
                              rr.ledger, rr.iterations, digest);
    out.solution.algorithm = algorithm_name(alg);
    out.solution.k = inst.k;
    out.solution.cost = rr.solution.cost;
    out.solution.lp0 = rr.solution.lp0;
    out.solution.edges = rr.solution.edges;
  }
  return out;
}

int cmd_solve(const std::string& algorithm, const std::string& input,
              const std::string& out_path, const std::string& cert_path,
              bool trace) {
  Instance inst;
  try {
    inst = parse_instance(read_file(input));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    SolveOutput out = run_solver(inst, algorithm_from(algorithm), trace);
    write_output(out_path, emit_solution(out.solution, inst.graph));
    if (!cert_path.empty()) {
      write_output(cert_path, out.certificate.to_text());
    }
    if (!out.certificate.valid) {
      std::cerr << "certificate INVALID\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " (witness cut:";
      for (int v : e.witness()) std::cerr << " " << v + 1;
      std::cerr << ")";
    }
    std::cerr << "\n";
    return kExitInfeasible;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
}

// Fresh lower bound for the verifier: the first LP of a clean solver state.
Rational recompute_lp0(const MultiGraph& g, int k) {
  SolverState st = SolverState::initial(g, k, Algorithm::Bicriteria1);
  if (st.fractional.empty()) return Rational(0);
  CutPool pool;
  return cutting_plane_extreme_point(st, pool).objective;
}

int cmd_verify(const std::string& algorithm, const std::string& input,
               const std::string& solution_path) {
  Instance inst;
  SolutionFile sol;
  try {
    inst = parse_instance(read_file(input));
    sol = parse_solution(read_file(solution_path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    const Algorithm alg = algorithm_from(algorithm);
    if (sol.algorithm != algorithm_name(alg) || sol.k != inst.k) {
      std::cerr << "solution file does not match the instance/algorithm\n";
      return kExitParse;
    }
    const uint64_t digest = instance_digest(inst);
    Certificate cert;
    if (alg == Algorithm::Ecsm) {
      MultiGraph replicated(inst.graph.node_count());
      std::vector<EdgeId> ids = inst.graph.live_edge_ids();
      for (EdgeId id : ids) {
        const Edge& e = inst.graph.edge(id);
        for (int c = 0; c < inst.k + 4; ++c) {
          replicated.add_edge(e.u, e.v, e.cost);
        }
      }
      EcsmResult res;
      res.solution.multiplicity = sol.multiplicity;
      for (const auto& [id, mult] : sol.multiplicity) {
        if (id < 0 || id >= inst.graph.total_edge_count()) {
          std::cerr << "solution references an unknown edge\n";
          return kExitParse;
        }
        res.solution.cost += Rational(mult) * inst.graph.edge(id).cost;
      }
      res.kprime = inst.k + 4;
      res.lp0 = inst.graph.node_count() == 1
                    ? Rational(0)
                    : recompute_lp0(replicated, inst.k + 4);
      cert = certify_multiset(inst.graph, inst.k, res, digest);
    } else {
      Solution s;
      s.edges = sol.edges;
      for (EdgeId id : sol.edges) {
        if (id < 0 || id >= inst.graph.total_edge_count()) {
          std::cerr << "solution references an unknown edge\n";
          return kExitParse;
        }
        s.cost += inst.graph.edge(id).cost;
      }
      if (s.cost != sol.cost) {
        std::cerr << "solution cost disagrees with its edge list\n";
        return kExitParse;
      }
      s.lp0 = recompute_lp0(inst.graph, inst.k);
      if (s.lp0 != sol.lp0) {
        std::cerr << "recomputed LP bound disagrees with the solution file\n";
        return kExitParse;
      }
      cert = certify(inst.graph, inst.k, alg, s, {}, 0, digest);
    }
    std::cout << cert.to_text();
    return cert.valid ? kExitOk : kExitParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int cmd_bench(const std::string& families_csv, int count, uint64_t seed,
              int kmax) {
  std::vector<std::string> families;
  {
    std::stringstream ss(families_csv);
    std::string f;
    while (std::getline(ss, f, ',')) {
      if (!f.empty()) families.push_back(f);
    }
  }
  std::cout << "family,index,n,m,k,algorithm,cost,lp0,mincut,cost_slack,"
               "mincut_slack,iterations,time_ms\n";
  for (int idx = 0; idx < count; ++idx) {
    for (const std::string& family : families) {
      GenParams params;
      const uint64_t inst_seed =
          fnv1a64(family) ^ (seed * 0x9e3779b97f4a7c15ull) ^
          static_cast<uint64_t>(idx);
      std::mt19937_64 meta(inst_seed);
      auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(meta() % (hi - lo + 1));
      };
      params.k = pick(3, std::max(3, kmax));
      if (family == "gnp") {
        params.n = pick(5, 12);
        params.p = Rational(pick(45, 80), 100);
      } else if (family == "multi-cycle") {
        params.n = pick(4, 9);
        params.dup = pick(std::max(2, (params.k + 1) / 2), 5);
      } else if (family == "theta") {
        params.paths = pick(std::max(3, params.k), 8);
        params.path_len = pick(1, 3);
      } else {
        params.n = pick(4, 8);
      }

      Instance inst;
      uint64_t sub_seed = inst_seed;
      for (int attempt = 0;; ++attempt) {
        inst = generate_instance(family, params, sub_seed);
        std::vector<WeightedEdge> caps;
        for (EdgeId id : inst.graph.live_edge_ids()) {
          const Edge& e = inst.graph.edge(id);
          caps.push_back(WeightedEdge{e.u, e.v, Rational(1)});
        }
        if (inst.graph.node_count() >= 2 && !caps.empty() &&
            global_min_cut(inst.graph.nodes(), caps).first >= inst.k) {
          break;
        }
        if (attempt > 200) {
          std::cerr << "giving up on a feasible " << family << " instance\n";
          return kExitInvariant;
        }
        sub_seed = sub_seed * 6364136223846793005ull + 1442695040888963407ull;
      }

      for (Algorithm alg :
           {Algorithm::Bicriteria1, Algorithm::Bicriteria2}) {
        auto t0 = std::chrono::steady_clock::now();
        RunResult rr = alg == Algorithm::Bicriteria1
                           ? run_algorithm1(inst.graph, inst.k)
                           : run_algorithm2(inst.graph, inst.k);
        auto t1 = std::chrono::steady_clock::now();
        Certificate cert =
            certify(inst.graph, inst.k, alg, rr.solution, rr.ledger,
                    rr.iterations, instance_digest(inst));
        const int drop = alg == Algorithm::Bicriteria1 ? 4 : 2;
        const Rational slack = cert.cost_bound - cert.cost;
        std::cout << family << "," << idx << "," << inst.graph.node_count()
                  << "," << inst.graph.edge_count() << "," << inst.k << ","
                  << algorithm_name(alg) << "," << format_rational(cert.cost)
                  << "," << format_rational(cert.lp0) << "," << cert.mincut
                  << "," << format_rational(slack) << ","
                  << cert.mincut - (inst.k - drop) << "," << rr.iterations
                  << ","
                  << std::chrono::duration_cast<std::chrono::milliseconds>(
                         t1 - t0)
                         .count()
                  << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_gen(const std::string& family, const GenParams& params, uint64_t seed,
            const std::string& out_path) {
  try {
    write_output(out_path, generate_instance_text(family, params, seed));
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bicriteria solvers for k-edge-connected spanning "
               "subgraphs"};
  app.require_subcommand(1);

  std::string algorithm = "bicriteria1";
  std::string input, out_path = "-", cert_path, solution_path;
  bool trace = false;

  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--algorithm", algorithm)
      ->check(CLI::IsMember({"bicriteria1", "bicriteria2", "ecsm"}));
  solve->add_option("--input", input)->required();
  solve->add_option("--out", out_path);
  solve->add_option("--certificate", cert_path);
  solve->add_flag("--trace", trace);

  CLI::App* verify = app.add_subcommand("verify", "re-certify a solution");
  verify->add_option("--algorithm", algorithm)
      ->check(CLI::IsMember({"bicriteria1", "bicriteria2", "ecsm"}));
  verify->add_option("--input", input)->required();
  verify->add_option("--solution", solution_path)->required();

  std::string families = "gnp,multi-cycle,theta";
  int count = 5, kmax = 8;
  uint64_t seed = 1;
  CLI::App* bench = app.add_subcommand("bench", "run generated instances");
  bench->add_option("--families", families);
  bench->add_option("--count", count);
  bench->add_option("--seed", seed);
  bench->add_option("--kmax", kmax);

  std::string family = "gnp";
  GenParams params;
  std::string p_text = "1/2";
  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", family)
      ->check(CLI::IsMember({"gnp", "multi-cycle", "theta", "clique"}));
  gen->add_option("--n", params.n);
  gen->add_option("--p", p_text);
  gen->add_option("--dup", params.dup);
  gen->add_option("--paths", params.paths);
  gen->add_option("--pathlen", params.path_len);
  gen->add_option("--cmax", params.c_max);
  gen->add_option("--k", params.k);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return cmd_solve(algorithm, input, out_path, cert_path, trace);
    }
    if (verify->parsed()) {
      return cmd_verify(algorithm, input, solution_path);
    }
    if (bench->parsed()) {
      return cmd_bench(families, count, seed, kmax);
    }
    if (gen->parsed()) {
      auto p = parse_rational(p_text);
      if (!p || *p < 0 || *p > 1) {
        std::cerr << "--p must be a rational in [0, 1]\n";
        return kExitParse;
      }
      params.p = *p;
      return cmd_gen(family, params, seed, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
