#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kecss/multigraph.hpp"

namespace kecss {

struct Instance {
  MultiGraph graph;
  int k = 0;
};

// Grammar: optional `#` comment lines, one `p kecss <n> <m> <k>` header,
// then exactly m lines `e <u> <v> <cost>` with 1-based node indices and
// costs given as integers or exact fractions p/q. Self-loops are rejected.
Instance parse_instance(const std::string& text);

// Canonical text for an instance; parse(emit(x)) == x.
std::string emit_instance(const Instance& inst,
                          const std::vector<std::string>& comments = {});

uint64_t fnv1a64(const std::string& data);
uint64_t instance_digest(const Instance& inst);

struct GenParams {
  int n = 8;             // gnp, multi-cycle, clique
  Rational p{1, 2};      // gnp edge probability
  int dup = 2;           // multi-cycle parallel copies per ring edge
  int paths = 4;         // theta
  int path_len = 2;      // theta, edges per hub-to-hub path
  int c_max = 10;        // uniform integer costs in [1, c_max]
  int k = 3;
};

// Families: gnp, multi-cycle, theta, clique. Deterministic in
// (family, params, seed).
Instance generate_instance(const std::string& family, const GenParams& params,
                           uint64_t seed);

// Same, emitted as text; prepends a warning comment when the parameters
// cannot reach connectivity k at all.
std::string generate_instance_text(const std::string& family,
                                   const GenParams& params, uint64_t seed);

struct SolutionFile {
  std::string algorithm;
  int k = 0;
  Rational cost;
  Rational lp0;
  std::vector<EdgeId> edges;           // subgraph algorithms
  std::map<EdgeId, int> multiplicity;  // multisubgraph
};

std::string emit_solution(const SolutionFile& sol, const MultiGraph& g0);
SolutionFile parse_solution(const std::string& text);

}  // namespace kecss
