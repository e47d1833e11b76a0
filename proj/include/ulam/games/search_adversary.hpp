#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/partial_sums.hpp"
#include "ulam/queries.hpp"

namespace ulam {

// Lower-bound responder for searching a hidden permutation with subset
// queries "is the minimum's position in S?". It answers so that the larger
// Berlekamp-weight half of the positions survives (ties answer "no"), and
// afterwards exhibits, for any output index e, a permutation consistent
// with all but at most H responses that ranks e as high as consistency
// allows.
class SearchAdversary : public Responder {
 public:
  SearchAdversary(long n, QueryBudget budget);

  bool answer_subset(const std::vector<int>& member_set) override;

  long n() const { return static_cast<long>(lies_.size()); }
  int queries_answered() const { return answered_; }

  // Positions that could hold the minimum with at most H lies.
  std::vector<long> consistent_positions() const;
  long consistent_count() const;

  struct Witness {
    std::vector<long> ranks;  // ranks[i] = A[i]
    long witnessed_rank = 0;  // ranks[output]
    long min_position = 0;    // argmin of the witness permutation
    int lies = 0;             // responses the witness contradicts
  };
  Witness witness_for(long output_index) const;

  // floor(n * S(k, H) / 2^k), the printed guarantee.
  mpz_class floor_bound() const;

  const std::vector<TranscriptEntry>& entries() const { return entries_; }

 private:
  QueryBudget budget_;
  WeightTable weights_;
  std::vector<std::int16_t> lies_;
  int answered_ = 0;
  std::vector<TranscriptEntry> entries_;
};

// Lies of a witness whose minimum sits at min_position, measured against a
// recorded subset transcript.
int count_witness_lies(const std::vector<TranscriptEntry>& entries, long min_position);

}  // namespace ulam
