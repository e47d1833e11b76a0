#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "ulam/advice.hpp"
#include "ulam/budget.hpp"
#include "ulam/exec.hpp"

namespace ulam {

// Problem-specific knobs; only the fields a problem declares are accepted.
struct ExperimentParams {
  long double m = 1.0L;        // ts: price floor
  long double M = 100.0L;      // ts: price ceiling
  long double rho = 1.0L;      // ts_robust
  long double r = 4.0L;        // bidding_robust
  long double base = 0.0L;     // bidding: family base (0 = optimizer)
  long u_grid = 1000;          // bidding/fpb: log-grid size
  long double u_max = 1e6L;    // bidding/fpb: largest target
  long p = 2;                  // fpb: parallel sequences
  long phi = 1;                // fpb: fault budget
  long double b = 2.0L;        // fpb: family base
  long double UL = 16.0L;      // knapsack: density ratio U/L
  long eps_den = 1000;         // knapsack: item granularity 1/eps
  long random_instances = 0;   // ts: extra random instances
  long random_len = 8;         // ts: prices per random instance
};

struct ExperimentConfig {
  std::string problem;  // ts | bidding | fpb | knapsack | ts_robust | bidding_robust
  std::vector<int> ks;
  std::vector<int> Hs;
  ErrorPolicy policy;
  std::uint64_t seed = 0;
  std::string out_csv;
  std::string out_jsonl;
  ExperimentParams params;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
};

struct ResultRow {
  std::string problem;
  int k = 0;
  int H = 0;
  int eta_realized = 0;
  long double empirical_cr = 0.0L;
  long double bound_upper = 0.0L;
  long double bound_lower = 0.0L;
  bool within_bound = true;
  std::string instance_id;
  std::uint64_t seed = 0;
};

// Bound comparisons carry this relative tolerance (exact-rational paths in
// the test suites use zero).
inline constexpr long double kBoundTol = 1e-9L;

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      ExecPolicy exec = ExecPolicy::Parallel);

std::string format_real(long double v);
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_jsonl(const std::vector<ResultRow>& rows);
void write_file(const std::string& path, const std::string& content);

struct Summary {
  std::size_t count = 0;
  long double sup_ratio = 0.0L;
  std::size_t violations = 0;
};
Summary summarize(const std::vector<ResultRow>& rows);

}  // namespace ulam
