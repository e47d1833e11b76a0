#pragma once

#include <cstdint>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/partial_sums.hpp"
#include "ulam/queries.hpp"

namespace ulam {

// Candidate ranks 0..m-1 annotated with lie counts. A candidate with more
// than H lies is dead and never re-enters. Weight of a candidate with q
// queries remaining and lie slack h is S(q, h).
class DiscreteState {
 public:
  DiscreteState(long m, QueryBudget budget);

  long size() const { return static_cast<long>(lies_.size()); }
  int remaining() const { return remaining_; }
  const QueryBudget& budget() const { return budget_; }

  long live_count() const { return live_count_; }
  long first_live() const { return first_live_; }
  long last_live() const { return last_live_; }
  bool is_live(long c) const { return lies_[c] <= budget_.H; }
  int lies(long c) const { return lies_[c]; }

  // Weight totals of the two successor states of "is x <= t?".
  // Valid thresholds are first_live-1 .. last_live.
  struct Branch {
    std::uint64_t yes;
    std::uint64_t no;
  };
  Branch branch_weights(long t) const;

  // Threshold minimizing |yes - no|, ties toward the smaller threshold.
  long balanced_threshold() const;

  void apply(long t, bool yes);

  std::uint64_t total_weight() const;

 private:
  QueryBudget budget_;
  WeightTable weights_;
  std::vector<std::int16_t> lies_;
  int remaining_ = 0;
  long live_count_ = 0;
  long first_live_ = 0;
  long last_live_ = 0;
};

// Weighting questioner for the Identify/Find games over {0..m-1} using
// comparison queries. The session is a deterministic state machine so the
// verifier can fork it down both response branches.
class IdentifySession {
 public:
  IdentifySession(long m, QueryBudget budget);

  bool done() const;
  long next_threshold() const;
  void feed(bool response);

  // Unique consistent candidate when one exists; otherwise the candidate
  // with the fewest lies (smallest id on ties).
  long result() const;
  bool ambiguous() const;           // two or more candidates still consistent
  bool tolerance_exceeded() const;  // every candidate inconsistent
  int queries_used() const { return used_; }
  const DiscreteState& state() const { return state_; }

  void apply(long t, bool response);  // transcript-driven update

 private:
  DiscreteState state_;
  int used_ = 0;
};

struct GameResult {
  long value = 0;
  bool ambiguous = false;
  bool tolerance_exceeded = false;
  int queries_used = 0;
  std::vector<long> thresholds;
  std::vector<bool> responses;
};

// Identify(m, H): requires the sufficiency condition
// 2^{k-H} >= m * S(k-H, H); refuses otherwise.
GameResult identify(long m, QueryBudget budget, Responder& responder);

// Find(k, H) entry point: same engine, precondition m <= mu_bounds.lower.
GameResult find_value(long m, QueryBudget budget, Responder& responder);

// Sphere-packing ceiling floor(2^k / S(k, H)); no strategy can exceed it.
mpz_class weighting_capacity(const QueryBudget& budget);

// Largest m <= weighting_capacity the session actually wins against every
// responder, established by exhaustive traversal and cached per (k, H).
// Falls back to the sufficiency floor(2^{k-H} / S(k-H, H)) when k is too
// large to traverse; never below it.
long verified_win_capacity(const QueryBudget& budget);

// Exhaustive check: does the session identify every candidate for this m
// against all responder strategies?
bool session_wins_everywhere(long m, QueryBudget budget);

}  // namespace ulam
