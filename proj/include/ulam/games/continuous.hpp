#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/partial_sums.hpp"
#include "ulam/queries.hpp"

namespace ulam {

// Candidate segments (lo, hi] of (0, 1] with lie counts, exact rational
// endpoints. Weight of a segment with q queries remaining and slack h is
// length * S(q, h); a balanced response halves the total exactly.
class ContinuousState {
 public:
  struct Segment {
    mpq_class lo, hi;
    int lies;
  };

  explicit ContinuousState(QueryBudget budget);

  int remaining() const { return remaining_; }
  const std::vector<Segment>& segments() const { return segs_; }

  mpq_class total_weight() const;

  // Weights of the two successor states of "is x <= a?".
  struct Branch {
    mpq_class yes;
    mpq_class no;
  };
  Branch branch_weights(const mpq_class& a) const;

  // Smallest threshold a with weight_yes(a) == total/2; exact halving is
  // always possible because weight_yes is continuous and spans the total.
  mpq_class balanced_threshold() const;

  void apply(const mpq_class& a, bool yes);

  mpq_class consistent_measure() const;
  std::pair<mpq_class, mpq_class> hull() const;  // (0,0) when nothing is live

 private:
  QueryBudget budget_;
  int remaining_;
  std::vector<Segment> segs_;  // ordered, live only
  std::vector<mpz_class> weight_;  // S(q, h) cache, row-major (q, h+1)

  const mpz_class& w(int q, int h) const;
};

class ContinuousSession {
 public:
  explicit ContinuousSession(QueryBudget budget) : state_(budget), budget_(budget) {}

  bool done() const { return used_ >= budget_.k; }
  mpq_class next_threshold() const { return state_.balanced_threshold(); }
  void feed(bool response);
  void apply(const mpq_class& a, bool response);

  const ContinuousState& state() const { return state_; }
  int queries_used() const { return used_; }

 private:
  ContinuousState state_;
  QueryBudget budget_;
  int used_ = 0;
};

struct ContinuousResult {
  mpq_class hull_lo, hull_hi;
  mpq_class consistent_measure;
  int queries_used = 0;
  std::vector<mpq_class> thresholds;
  std::vector<bool> responses;
};

// C-Weighting questioner: every query splits the total weight exactly in
// half; the final consistent measure is S(k, H) / 2^k for every responder.
ContinuousResult continuous_search(QueryBudget budget, Responder& responder);

// Lower-bound responder: answers each query so that the larger weight half
// survives, ties toward "no". Guarantees final measure >= S(k, H) / 2^k.
class ContinuousAdversary : public Responder {
 public:
  explicit ContinuousAdversary(QueryBudget budget) : state_(budget) {}
  bool answer_continuous(const mpq_class& a) override;
  const ContinuousState& state() const { return state_; }

 private:
  ContinuousState state_;
};

}  // namespace ulam
