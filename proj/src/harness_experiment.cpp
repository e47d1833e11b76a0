#include "ulam/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include "ulam/bounds.hpp"
#include "ulam/problems/bidding.hpp"
#include "ulam/problems/knapsack.hpp"
#include "ulam/problems/timeseries.hpp"

namespace ulam {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

const std::set<std::string>& param_whitelist(const std::string& problem) {
  static const std::set<std::string> ts = {"m", "M", "random_instances", "random_len"};
  static const std::set<std::string> ts_robust = {"m", "M", "rho", "random_instances",
                                                  "random_len"};
  static const std::set<std::string> bidding = {"u_grid", "u_max", "base"};
  static const std::set<std::string> bidding_robust = {"u_grid", "u_max", "r"};
  static const std::set<std::string> fpb = {"p", "phi", "b", "u_grid", "u_max"};
  static const std::set<std::string> knapsack = {"UL", "eps_den"};
  if (problem == "ts") return ts;
  if (problem == "ts_robust") return ts_robust;
  if (problem == "bidding") return bidding;
  if (problem == "bidding_robust") return bidding_robust;
  if (problem == "fpb") return fpb;
  if (problem == "knapsack") return knapsack;
  throw std::invalid_argument("unknown problem: " + problem);
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long double unit_real(std::uint64_t bits) {
  return static_cast<long double>(bits >> 11) / static_cast<long double>(1ULL << 53);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  static const std::set<std::string> top = {"problem", "k",       "H",      "error_policy",
                                            "seed",    "out_csv", "out_jsonl", "params"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!top.count(it.key())) throw std::invalid_argument("unknown config key: " + it.key());
  }
  if (!j.contains("problem") || !j.contains("k") || !j.contains("H")) {
    throw std::invalid_argument("config requires problem, k, H");
  }
  c.problem = j.at("problem").get<std::string>();
  const auto& allowed = param_whitelist(c.problem);  // validates the problem name
  c.ks = j.at("k").get<std::vector<int>>();
  c.Hs = j.at("H").get<std::vector<int>>();
  if (c.ks.empty()) throw std::invalid_argument("k range is empty");
  for (int k : c.ks) {
    for (int H : c.Hs) {
      if (k < 0 || H < 0 || 2 * H > k) {
        throw std::invalid_argument("k range violates 2H <= k: k=" + std::to_string(k) +
                                    " H=" + std::to_string(H));
      }
    }
  }
  if (j.contains("error_policy")) c.policy = ErrorPolicy::parse(j.at("error_policy"));
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_csv")) c.out_csv = j.at("out_csv").get<std::string>();
  if (j.contains("out_jsonl")) c.out_jsonl = j.at("out_jsonl").get<std::string>();
  if (j.contains("params")) {
    const auto& p = j.at("params");
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (!allowed.count(it.key())) {
        throw std::invalid_argument("unknown param for " + c.problem + ": " + it.key());
      }
    }
    auto get_ld = [&](const char* key, long double dflt) {
      return p.contains(key) ? static_cast<long double>(p.at(key).get<double>()) : dflt;
    };
    auto get_long = [&](const char* key, long dflt) {
      return p.contains(key) ? p.at(key).get<long>() : dflt;
    };
    c.params.m = get_ld("m", c.params.m);
    c.params.M = get_ld("M", c.params.M);
    c.params.rho = get_ld("rho", c.params.rho);
    c.params.r = get_ld("r", c.params.r);
    c.params.base = get_ld("base", c.params.base);
    c.params.u_grid = get_long("u_grid", c.params.u_grid);
    c.params.u_max = get_ld("u_max", c.params.u_max);
    c.params.p = get_long("p", c.params.p);
    c.params.phi = get_long("phi", c.params.phi);
    c.params.b = get_ld("b", c.params.b);
    c.params.UL = get_ld("UL", c.params.UL);
    c.params.eps_den = get_long("eps_den", c.params.eps_den);
    c.params.random_instances = get_long("random_instances", c.params.random_instances);
    c.params.random_len = get_long("random_len", c.params.random_len);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed config " + path + ": " + e.what());
  }
  return from_json(j);
}

namespace {

struct Job {
  QueryBudget budget;
  std::string instance_id;
  long index = 0;  // problem-specific payload index
};

std::vector<PriceInstance> ts_instances(const ExperimentConfig& cfg, QueryBudget budget) {
  auto instances = ts_adversarial_instances(budget, cfg.params.m, cfg.params.M);
  for (long i = 0; i < cfg.params.random_instances; ++i) {
    PriceInstance inst;
    inst.m = cfg.params.m;
    inst.M = cfg.params.M;
    inst.id = "rand_" + std::to_string(i);
    for (long t = 0; t < cfg.params.random_len; ++t) {
      const std::uint64_t bits =
          mix64(cfg.seed * 0x9e3779b97f4a7c15ULL + i * 1000003ULL + t + 1);
      const long double x = unit_real(bits);
      inst.prices.push_back(cfg.params.m * std::pow(cfg.params.M / cfg.params.m, x));
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

ErrorPolicy per_instance_policy(const ExperimentConfig& cfg, const std::string& instance_id) {
  ErrorPolicy p = cfg.policy;
  if (p.kind == PolicyKind::Random) {
    // Decorrelate instances while keeping replays bit-identical.
    p.seed = mix64(p.seed ^ std::hash<std::string>{}(instance_id));
  }
  return p;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, ExecPolicy exec) {
  std::vector<ResultRow> rows;
  const bool robust_ts = cfg.problem == "ts_robust";
  const bool robust_bidding = cfg.problem == "bidding_robust";

  for (int k : cfg.ks) {
    for (int H : cfg.Hs) {
      const QueryBudget budget(k, H);
      if (cfg.problem == "ts" || robust_ts) {
        const auto instances = ts_instances(cfg, budget);
        const TsBounds tb = ts_bounds(budget, cfg.params.M / cfg.params.m);
        const RobustTsBounds rtb =
            robust_ts ? robust_ts_bounds(budget, cfg.params.M / cfg.params.m, cfg.params.rho)
                      : RobustTsBounds{};
        std::vector<ResultRow> batch(instances.size());
        parallel_for(exec, static_cast<long>(instances.size()), [&](long i) {
          const auto policy = per_instance_policy(cfg, instances[i].id);
          const TsRunResult r = robust_ts
                                    ? ts_robust_run(instances[i], budget, policy, cfg.params.rho)
                                    : ts_run(instances[i], budget, policy);
          ResultRow row;
          row.problem = cfg.problem;
          row.k = k;
          row.H = H;
          row.eta_realized = r.error.eta;
          row.empirical_cr = r.ratio;
          row.bound_upper = robust_ts ? rtb.upper_cr : tb.upper_cr;
          row.bound_lower = robust_ts ? rtb.lower_cr : tb.lower_cr;
          row.instance_id = instances[i].id;
          row.seed = cfg.seed;
          row.within_bound =
              r.error.eta <= H ? r.ratio <= row.bound_upper * (1.0L + kBoundTol) : true;
          if (robust_ts) {
            row.within_bound = row.within_bound && r.ratio <= r.bound_robust * (1.0L + kBoundTol);
          }
          batch[i] = std::move(row);
        });
        rows.insert(rows.end(), batch.begin(), batch.end());
      } else if (cfg.problem == "bidding" || robust_bidding) {
        BidFamily family;
        family.l = 1L << k;
        family.b = robust_bidding
                       ? robust_bidding_bounds(budget, cfg.params.r).b_opt
                       : (cfg.params.base > 1.0L ? cfg.params.base : bidding_optimal_base(budget));
        const auto grid = bidding_target_grid(family, cfg.params.u_grid, cfg.params.u_max);
        const long double ub =
            robust_bidding ? robust_bidding_bounds(budget, cfg.params.r).upper_cr
                           : bidding_upper_bound(budget);
        const long double lb = robust_bidding
                                   ? robust_bidding_bounds(budget, cfg.params.r).lower_cr
                                   : bidding_lower_bound(budget);
        std::vector<ResultRow> batch(grid.size());
        parallel_for(exec, static_cast<long>(grid.size()), [&](long i) {
          char idbuf[32];
          std::snprintf(idbuf, sizeof(idbuf), "u_%06ld", i);
          const auto policy = per_instance_policy(cfg, idbuf);
          const BiddingRunResult r =
              robust_bidding
                  ? bidding_robust_with_advice(budget, cfg.params.r, policy, grid[i])
                  : bidding_with_advice(budget, cfg.params.base, policy, grid[i]);
          ResultRow row;
          row.problem = cfg.problem;
          row.k = k;
          row.H = H;
          row.eta_realized = r.error.eta;
          row.empirical_cr = r.ratio;
          row.bound_upper = ub;
          row.bound_lower = lb;
          row.instance_id = idbuf;
          row.seed = cfg.seed;
          row.within_bound = r.error.eta <= H ? r.ratio <= ub * (1.0L + kBoundTol) : true;
          if (robust_bidding) {
            row.within_bound =
                row.within_bound && r.ratio <= cfg.params.r * (1.0L + kBoundTol);
          }
          batch[i] = std::move(row);
        });
        rows.insert(rows.end(), batch.begin(), batch.end());
      } else if (cfg.problem == "fpb") {
        ParallelBidStrategy strategy;
        for (long i = 0; i < cfg.params.p; ++i) {
          strategy.sequences.push_back(BidSequence{cfg.params.b, i, cfg.params.p, false});
        }
        BidFamily family{cfg.params.b, cfg.params.p};
        const auto grid = bidding_target_grid(family, cfg.params.u_grid, cfg.params.u_max);
        const long double lb =
            fpb_lower_bound(cfg.params.p, cfg.params.phi, cfg.params.b);
        std::vector<ResultRow> batch(grid.size());
        parallel_for(exec, static_cast<long>(grid.size()), [&](long i) {
          char idbuf[32];
          std::snprintf(idbuf, sizeof(idbuf), "u_%06ld", i);
          const long double cost = fpb_worst_cost(strategy, static_cast<int>(cfg.params.phi),
                                                  grid[i]);
          ResultRow row;
          row.problem = cfg.problem;
          row.k = k;
          row.H = H;
          row.eta_realized = 0;
          row.empirical_cr = cost / grid[i];
          row.bound_upper = kInf;
          row.bound_lower = lb;
          row.instance_id = idbuf;
          row.seed = cfg.seed;
          row.within_bound = true;
          batch[i] = std::move(row);
        });
        rows.insert(rows.end(), batch.begin(), batch.end());
      } else if (cfg.problem == "knapsack") {
        const KnapsackBounds kb = knapsack_bounds(budget, cfg.params.UL);
        if (kb.no_advice) {
          ResultRow row;
          row.problem = cfg.problem;
          row.k = k;
          row.H = H;
          row.empirical_cr = kInf;
          row.bound_upper = kInf;
          row.bound_lower = kb.lower_cr;
          row.instance_id = "no_advice";
          row.seed = cfg.seed;
          rows.push_back(std::move(row));
          continue;
        }
        const auto instances = knapsack_adversarial_instances(
            kb.upper_sm.s, kb.upper_sm.m, 1.0L, cfg.params.UL,
            mpq_class(1, cfg.params.eps_den));
        std::vector<ResultRow> batch(instances.size());
        parallel_for(exec, static_cast<long>(instances.size()), [&](long i) {
          const auto policy = per_instance_policy(cfg, instances[i].id);
          const KnapsackRunResult r = knapsack_run(instances[i], budget, policy);
          ResultRow row;
          row.problem = cfg.problem;
          row.k = k;
          row.H = H;
          row.eta_realized = r.error.eta;
          row.empirical_cr = r.ratio;
          row.bound_upper = kb.upper_cr;
          row.bound_lower = kb.lower_cr;
          row.instance_id = instances[i].id;
          row.seed = cfg.seed;
          row.within_bound =
              r.error.eta <= H ? r.ratio <= kb.upper_cr * (1.0L + kBoundTol) : true;
          batch[i] = std::move(row);
        });
        rows.insert(rows.end(), batch.begin(), batch.end());
      } else {
        throw std::invalid_argument("unknown problem: " + cfg.problem);
      }
    }
  }
  return rows;
}

std::string format_real(long double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15Lg", v);
  return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "problem,k,H,eta_realized,empirical_cr,bound_upper,bound_lower,within_bound,instance_id,"
      "seed\r\n";
  for (const auto& r : rows) {
    out += csv_quote(r.problem) + ',' + std::to_string(r.k) + ',' + std::to_string(r.H) + ',' +
           std::to_string(r.eta_realized) + ',' + format_real(r.empirical_cr) + ',' +
           format_real(r.bound_upper) + ',' + format_real(r.bound_lower) + ',' +
           (r.within_bound ? "true" : "false") + ',' + csv_quote(r.instance_id) + ',' +
           std::to_string(r.seed) + "\r\n";
  }
  return out;
}

std::string to_jsonl(const std::vector<ResultRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::json j;
    j["problem"] = r.problem;
    j["k"] = r.k;
    j["H"] = r.H;
    j["eta_realized"] = r.eta_realized;
    j["empirical_cr"] = format_real(r.empirical_cr);
    j["bound_upper"] = format_real(r.bound_upper);
    j["bound_lower"] = format_real(r.bound_lower);
    j["within_bound"] = r.within_bound;
    j["instance_id"] = r.instance_id;
    j["seed"] = r.seed;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

Summary summarize(const std::vector<ResultRow>& rows) {
  Summary s;
  s.count = rows.size();
  for (const auto& r : rows) {
    if (std::isfinite(r.empirical_cr)) s.sup_ratio = std::max(s.sup_ratio, r.empirical_cr);
    if (!r.within_bound) ++s.violations;
  }
  return s;
}

}  // namespace ulam
