#include "ulam/games/min_cyclic.hpp"

#include <algorithm>
#include <stdexcept>

#include "ulam/games/discrete.hpp"
#include "ulam/partial_sums.hpp"

namespace ulam {

long BlockPartition::block_of(long x) const {
  // start(b) <= x <=> b <= x * blocks / n in exact arithmetic.
  long b = (x * blocks + blocks - 1) / n;
  while (b > 0 && start(b) > x) --b;
  while (b + 1 < blocks && start(b + 1) <= x) ++b;
  return b;
}

long min_cyclic_blocks(long n, QueryBudget budget) {
  const long cap = verified_win_capacity(budget);
  return std::max(1L, std::min(cap, n));
}

BlockPartition min_cyclic_partition(long n, QueryBudget budget) {
  return BlockPartition{n, min_cyclic_blocks(n, budget)};
}

mpz_class min_cyclic_guarantee(long n, QueryBudget budget) {
  const long q = budget.k - budget.H;
  return ceil_div(mpz_class(n) * partial_binomial_sum(q, std::min<long>(budget.H, q)), pow2(q));
}

MinCyclicResult min_cyclic(long n, QueryBudget budget, Responder& responder) {
  if (n < 1) throw std::domain_error("array must be nonempty");
  MinCyclicResult r;
  r.guarantee = min_cyclic_guarantee(n, budget);
  const BlockPartition part = min_cyclic_partition(n, budget);
  if (part.blocks <= 1) {
    // No usable partition: vacuous answer, A[j] <= n-1 regardless.
    r.index = part.blocks == 1 ? n - 1 : 0;
    r.block = 0;
    r.vacuous = true;
    return r;
  }
  IdentifySession session(part.blocks, budget);
  while (!session.done()) {
    const long b = session.next_threshold();
    // "is block(x) <= b" translates to "is x <= end(b)"; thresholds below
    // the first block are asked verbatim (always "no" when truthful).
    const long t = b < 0 ? -1 : part.end(b);
    const bool resp = responder.answer_comparison(t);
    session.apply(b, resp);
    r.thresholds.push_back(t);
    r.responses.push_back(resp);
  }
  r.block = session.result();
  r.index = part.end(r.block);
  r.tolerance_exceeded = session.tolerance_exceeded();
  r.queries_used = session.queries_used();
  return r;
}

}  // namespace ulam
