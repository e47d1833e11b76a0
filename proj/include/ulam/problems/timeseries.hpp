#pragma once

#include <string>
#include <vector>

#include "ulam/advice.hpp"
#include "ulam/bounds.hpp"
#include "ulam/budget.hpp"

namespace ulam {

struct PriceInstance {
  std::vector<long double> prices;
  long double m = 1.0L;
  long double M = 1.0L;
  std::string id;

  void validate() const;
  long double max_price() const;
};

struct TsRunResult {
  long double accepted = 0.0L;
  long double ratio = 1.0L;
  long reservation_index = 0;  // 0-based grid index the search settled on
  long double reservation = 0.0L;
  ErrorReport error;
  Transcript transcript;
  long double bound_consistent = 0.0L;  // holds whenever eta <= H
  long double bound_robust = 0.0L;      // holds unconditionally (robust runs)
};

// Reservation grid m r, m r^2, ..., m r^U with r = (M/m)^{1/(U+1)}; the best
// index for a sequence is the largest grid point not exceeding its maximum.
struct ReservationGrid {
  long double lo = 0.0L;  // grid anchor (m, or p1 for robust runs)
  long double r = 1.0L;
  long size = 0;
  long double price(long i) const;          // 1-based a_i
  long best_index(long double pmax) const;  // 0-based truth index
};

ReservationGrid ts_reservation_grid(QueryBudget budget, long double m, long double M);

TsRunResult ts_run(const PriceInstance& instance, QueryBudget budget, const ErrorPolicy& policy);

// Lower-bound request family sigma_i = (m, a_1, ..., a_i, m) on the grid
// with r' = (M/m)^{1/(L+1)}, i = 1..L+1 and a_{L+1} = M.
std::vector<PriceInstance> ts_adversarial_instances(QueryBudget budget, long double m,
                                                    long double M);

// Robust variant: reservation restricted to [p1, p2] with M/p1 = p2/m =
// (M/m)^rho; ratio <= (M/m)^rho under any error.
TsRunResult ts_robust_run(const PriceInstance& instance, QueryBudget budget,
                          const ErrorPolicy& policy, long double rho);

struct RobustPriceBand {
  long double p1 = 0.0L;
  long double p2 = 0.0L;
};
RobustPriceBand ts_robust_band(long double m, long double M, long double rho);

}  // namespace ulam
