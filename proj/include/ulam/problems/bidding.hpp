#pragma once

#include <string>
#include <vector>

#include "ulam/advice.hpp"
#include "ulam/bounds.hpp"
#include "ulam/budget.hpp"

namespace ulam {

// Geometric bid sequence (b^{offset + j l})_{j >= 0}; the cyclic family
// X_{b,l} is the set of these for offset 0..l-1.
struct BidSequence {
  long double b = 2.0L;
  long offset = 0;
  long l = 1;
  bool faulty = false;  // a faulty sequence keeps bidding but never discovers

  long double bid(long j) const;
};

struct BidFamily {
  long double b = 2.0L;
  long l = 1;

  BidSequence member(long i) const { return {b, i, l, false}; }
};

// Cost of discovering u: sum of bids up to and including the first bid >= u.
// Infinite for faulty sequences or b <= 1.
long double bidding_cost(const BidSequence& seq, long double u);

// Index whose member discovers u with the least cost.
long best_family_index(const BidFamily& family, long double u);

struct BiddingRunResult {
  long chosen = 0;
  long best = 0;
  long rank = 0;  // cyclic distance from the best member
  long double cost = 0.0L;
  long double ratio = 1.0L;
  ErrorReport error;
  Transcript transcript;
  long double bound_consistent = 0.0L;
  long double bound_robust = 0.0L;  // infinity unless a robust run
};

// Searches X_{b, 2^k} with the cyclic-minimum game; base <= 0 selects the
// optimizer ((2^k + U + 1)/(U + 1))^{1/2^k}.
BiddingRunResult bidding_with_advice(QueryBudget budget, long double base,
                                     const ErrorPolicy& policy, long double u);

// Robust variant: base constrained so every member is r-robust.
BiddingRunResult bidding_robust_with_advice(QueryBudget budget, long double r,
                                            const ErrorPolicy& policy, long double u);

struct ParallelBidStrategy {
  std::vector<BidSequence> sequences;
  std::vector<int> fault_set;  // indices marked faulty, |fault_set| <= phi

  ParallelBidStrategy with_faults(const std::vector<int>& faults) const;
};

// Round-robin interleaving by bid value: every bid issued up to and
// including the first non-faulty bid >= u counts toward the cost.
long double fpb_simulate(const ParallelBidStrategy& strategy, long double u);

// Adversarial fault choice: maximum simulated cost over fault sets of size
// at most phi.
long double fpb_worst_cost(const ParallelBidStrategy& strategy, int phi, long double u);

// Growth rate estimate alpha = x_i^{1/i} of the merged bid sequence.
long double merged_alpha(const ParallelBidStrategy& strategy, long terms);

// Log-spaced targets augmented with points just above every family bid,
// where the competitive ratio peaks.
std::vector<long double> bidding_target_grid(const BidFamily& family, long count,
                                             long double u_max);

}  // namespace ulam
