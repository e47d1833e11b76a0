#include "ulam/problems/bidding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ulam/games/min_cyclic.hpp"

namespace ulam {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

}  // namespace

long double BidSequence::bid(long j) const {
  return std::pow(b, static_cast<long double>(offset + j * l));
}

long double bidding_cost(const BidSequence& seq, long double u) {
  if (seq.faulty || !(seq.b > 1.0L)) return kInf;
  if (!(u >= 1.0L)) throw std::domain_error("target must satisfy u >= 1");
  long double cost = 0.0L;
  for (long j = 0;; ++j) {
    const long double x = seq.bid(j);
    cost += x;
    if (x >= u) return cost;
    if (x > 1e300L) return kInf;  // horizon: not discoverable numerically
  }
}

long best_family_index(const BidFamily& family, long double u) {
  long best = 0;
  long double best_cost = kInf;
  for (long i = 0; i < family.l; ++i) {
    const long double c = bidding_cost(family.member(i), u);
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  return best;
}

namespace {

BiddingRunResult run_family_search(QueryBudget budget, const BidFamily& family,
                                   const ErrorPolicy& policy, long double u) {
  const long n = family.l;
  const long truth = best_family_index(family, u);

  if (policy.kind == PolicyKind::Minimax) {
    BiddingRunResult worst;
    bool first = true;
    for (const auto& pattern : flip_patterns(budget.k, budget.H)) {
      ErrorPolicy fixed;
      fixed.kind = PolicyKind::Fixed;
      fixed.fixed_positions = pattern;
      BiddingRunResult r = run_family_search(budget, family, fixed, u);
      if (first || r.ratio > worst.ratio) {
        worst = r;
        first = false;
      }
    }
    return worst;
  }

  TruthFunctions truth_fns;
  truth_fns.comparison = [truth](long t) { return truth <= t; };
  std::unique_ptr<WeightShadow> shadow;
  if (policy.kind == PolicyKind::Greedy) {
    const BlockPartition part = min_cyclic_partition(n, budget);
    std::vector<long> ends(part.blocks);
    for (long b = 0; b < part.blocks; ++b) ends[b] = part.end(b);
    shadow = make_block_shadow(std::move(ends), budget);
  }
  AdviceOracle oracle(truth_fns, budget, policy, std::move(shadow));

  const MinCyclicResult mc = min_cyclic(n, budget, oracle);

  BiddingRunResult out;
  out.chosen = mc.index;
  out.best = truth;
  out.rank = ((mc.index - truth) % n + n) % n;
  out.cost = bidding_cost(family.member(out.chosen), u);
  out.ratio = out.cost / u;
  out.error = oracle.error_report();
  out.transcript = oracle.transcript();
  return out;
}

}  // namespace

BiddingRunResult bidding_with_advice(QueryBudget budget, long double base,
                                     const ErrorPolicy& policy, long double u) {
  if (budget.k > 24) throw std::domain_error("family of 2^k sequences too large to simulate");
  BidFamily family;
  family.l = 1L << budget.k;
  family.b = base > 1.0L ? base : bidding_optimal_base(budget);
  BiddingRunResult out = run_family_search(budget, family, policy, u);
  out.bound_consistent = bidding_upper_bound(budget);
  out.bound_robust = kInf;
  return out;
}

BiddingRunResult bidding_robust_with_advice(QueryBudget budget, long double r,
                                            const ErrorPolicy& policy, long double u) {
  const RobustBiddingBounds rb = robust_bidding_bounds(budget, r);  // validates r >= 4
  if (budget.k > 24) throw std::domain_error("family of 2^k sequences too large to simulate");
  BidFamily family;
  family.l = 1L << budget.k;
  family.b = rb.b_opt;
  BiddingRunResult out = run_family_search(budget, family, policy, u);
  out.bound_consistent = rb.upper_cr;
  out.bound_robust = r;
  return out;
}

ParallelBidStrategy ParallelBidStrategy::with_faults(const std::vector<int>& faults) const {
  ParallelBidStrategy s = *this;
  s.fault_set = faults;
  for (auto& seq : s.sequences) seq.faulty = false;
  for (int i : faults) {
    if (i < 0 || i >= static_cast<int>(s.sequences.size())) {
      throw std::domain_error("fault index out of range");
    }
    s.sequences[i].faulty = true;
  }
  return s;
}

long double fpb_simulate(const ParallelBidStrategy& strategy, long double u) {
  if (!(u >= 1.0L)) throw std::domain_error("target must satisfy u >= 1");
  const auto& seqs = strategy.sequences;
  if (seqs.empty()) throw std::domain_error("no sequences");
  bool any_live = false;
  for (const auto& s : seqs) {
    if (!s.faulty) any_live = true;
  }
  if (!any_live) return kInf;
  // Merge bids in nondecreasing value order, ties by sequence index.
  std::vector<long> next(seqs.size(), 0);
  long double cost = 0.0L;
  while (true) {
    long pick = -1;
    long double pick_bid = kInf;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      const long double x = seqs[i].bid(next[i]);
      if (x < pick_bid) {
        pick_bid = x;
        pick = static_cast<long>(i);
      }
    }
    if (pick < 0 || pick_bid > 1e300L) return kInf;
    cost += pick_bid;
    ++next[pick];
    if (!seqs[pick].faulty && pick_bid >= u) return cost;
  }
}

namespace {

void fault_subsets(int n, int phi, std::vector<int>& cur, int start,
                   const std::function<void(const std::vector<int>&)>& visit) {
  visit(cur);
  if (static_cast<int>(cur.size()) == phi) return;
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    fault_subsets(n, phi, cur, i + 1, visit);
    cur.pop_back();
  }
}

}  // namespace

long double fpb_worst_cost(const ParallelBidStrategy& strategy, int phi, long double u) {
  if (phi >= static_cast<int>(strategy.sequences.size())) {
    throw std::domain_error("need phi < p");
  }
  long double worst = 0.0L;
  std::vector<int> cur;
  fault_subsets(static_cast<int>(strategy.sequences.size()), phi, cur, 0,
                [&](const std::vector<int>& faults) {
                  worst = std::max(worst, fpb_simulate(strategy.with_faults(faults), u));
                });
  return worst;
}

long double merged_alpha(const ParallelBidStrategy& strategy, long terms) {
  const auto& seqs = strategy.sequences;
  std::vector<long> next(seqs.size(), 0);
  long double last = 0.0L;
  for (long i = 0; i < terms; ++i) {
    long pick = -1;
    long double pick_bid = kInf;
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      const long double x = seqs[j].bid(next[j]);
      if (x < pick_bid) {
        pick_bid = x;
        pick = static_cast<long>(j);
      }
    }
    ++next[pick];
    last = pick_bid;
  }
  // Index the merged sequence from 1; alpha = x_i^{1/i} at the horizon.
  return std::pow(last, 1.0L / static_cast<long double>(terms));
}

std::vector<long double> bidding_target_grid(const BidFamily& family, long count,
                                             long double u_max) {
  std::vector<long double> grid;
  grid.reserve(count + 64);
  const long double lo = 1.0L;
  for (long i = 0; i < count; ++i) {
    const long double t = static_cast<long double>(i) / static_cast<long double>(count - 1);
    grid.push_back(lo * std::pow(u_max / lo, t));
  }
  // The sup is approached just above the bids.
  for (long j = 0;; ++j) {
    const long double x = std::pow(family.b, static_cast<long double>(j));
    if (x > u_max) break;
    if (x >= 1.0L) grid.push_back(std::min(u_max, x * (1.0L + 1e-9L)));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace ulam
