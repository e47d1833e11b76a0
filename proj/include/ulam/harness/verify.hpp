#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/exec.hpp"

namespace ulam {

enum class VerifyScope { Identify, Continuous, MinCyclic, SearchAdversary };

VerifyScope parse_scope(const std::string& name);

// Candidate-count regime for the Identify scope: the printed sufficiency
// condition 2^{k-H} >= m S(k-H, H), or the verified session capacity the
// block search runs at.
enum class CapacityRule { Sufficient, Weighting };

struct VerifyLimits {
  int max_k = 8;
  int max_H = 2;
  long max_n = 16;                                  // MinCyclic / SearchAdversary
  CapacityRule capacity = CapacityRule::Weighting;  // Identify
  std::uint64_t node_cap = 200'000'000;
};

struct Counterexample {
  std::string description;
  nlohmann::json transcript;
};

struct VerifyReport {
  std::uint64_t cases = 0;
  std::uint64_t nodes = 0;
  bool complete = true;  // false when the node cap cut the traversal short
  std::vector<Counterexample> counterexamples;
  nlohmann::json notes;  // scope-specific observations (hull lengths, ...)
};

// Minimax traversal over every responder strategy (and, for the search
// adversary, an enumerated questioner family). Any violated guarantee is
// reported with its transcript verbatim.
VerifyReport verify_exhaustive(VerifyScope scope, const VerifyLimits& limits,
                               ExecPolicy exec = ExecPolicy::Parallel);

}  // namespace ulam
