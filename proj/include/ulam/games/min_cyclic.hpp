#pragma once

#include <gmpxx.h>

#include <vector>

#include "ulam/budget.hpp"
#include "ulam/queries.hpp"

namespace ulam {

// Block partition of [0, n-1] used by the MinCyclic questioner: blocks
// of near-equal size, block b covering [start(b), end(b)].
struct BlockPartition {
  long n = 0;
  long blocks = 0;
  long start(long b) const { return b * n / blocks; }
  long end(long b) const { return (b + 1) * n / blocks - 1; }
  long block_of(long x) const;
};

struct MinCyclicResult {
  long index = 0;           // returned array position j
  long block = 0;           // identified block
  mpz_class guarantee;      // ceil(n * S(k-H, H) / 2^{k-H})
  bool vacuous = false;     // no usable partition, index 0 returned
  bool tolerance_exceeded = false;
  int queries_used = 0;
  std::vector<long> thresholds;  // in index space
  std::vector<bool> responses;
};

// Number of blocks the questioner searches over: the verified session
// capacity capped at n (never below the printed floor(2^{k-H}/S(k-H,H))).
long min_cyclic_blocks(long n, QueryBudget budget);

BlockPartition min_cyclic_partition(long n, QueryBudget budget);

// Searches a hidden cyclic permutation A for a position with small value,
// asking comparison queries "is x <= t?" about the position x with A[x]=0.
// Returns j with A[j] <= ceil(n * S(k-H, H) / 2^{k-H}) whenever at most H
// responses were lies.
MinCyclicResult min_cyclic(long n, QueryBudget budget, Responder& responder);

mpz_class min_cyclic_guarantee(long n, QueryBudget budget);

}  // namespace ulam
