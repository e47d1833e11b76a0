#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/partial_sums.hpp"

namespace ulam {

struct BoundReport {
  std::string name;
  long double value = 0.0L;
  bool is_infinite = false;
  std::vector<std::pair<std::string, std::string>> formula_inputs;
  nlohmann::json to_json() const;
};

// f(x) = (1/x) (1+x)^{1 + 1/x}; decreasing, f(1) = 4, limit 1.
long double bidding_f(long double x);

struct TsBounds {
  long double upper_cr = 0.0L;  // (M/m)^{1/(U+1)}
  long double lower_cr = 0.0L;  // (M/m)^{1/(L+1)}
  mpz_class U;                  // floor(2^{k-H} / S(k-H, H))
  mpz_class L;                  // ceil(2^k / S(k, H))
};
TsBounds ts_bounds(QueryBudget budget, long double M_over_m);

// Rank budget of the cyclic search: ceil(2^H S(k-H, H)) capped at the last
// rank 2^k - 1 (a rank cannot exceed the family size).
mpz_class bidding_rank_budget(QueryBudget budget);

long double bidding_upper_bound(QueryBudget budget);
// Optimal family base ((2^k + U + 1)/(U + 1))^{1/2^k}.
long double bidding_optimal_base(QueryBudget budget);
long double bidding_lower_bound(QueryBudget budget);

// alpha^{p+1+phi} / (alpha^p - 1); +inf when alpha <= 1.
long double fpb_lower_bound(long p, long phi, long double alpha);

struct SMChoice {
  long s = 0;
  long m = 0;
};

struct KnapsackBounds {
  long double upper_cr = 0.0L;
  long double lower_cr = 0.0L;
  SMChoice upper_sm;
  SMChoice lower_sm;
  bool no_advice = false;  // no (s, m) with m >= 2 fits the budget
  mpz_class upper_cap;     // floor(2^{k-H} / S(k-H, H))
  mpz_class lower_cap;     // ceil(2^k / S(k, H)) + 1
};
KnapsackBounds knapsack_bounds(QueryBudget budget, long double U_over_L);

long double knapsack_fm(long m, long double beta);  // (beta^m - 1)/(beta^{m-1} - 1), m >= 2
long double knapsack_gm(long m, long double beta);  // ((b^2-b+1)/(2b+1))^{1/(m+1)}

// l = k / ((2/3 + c)(1 - H((1/3 - c)/(2/3 + c)))) + 1, for c in (0, 1/3).
long double resource_augmentation_size(long k, long double c);

struct RobustTsBounds {
  long double upper_cr = 0.0L;  // (M/m)^{(2 rho - 1)/(U+1)}
  long double lower_cr = 0.0L;  // (M/m)^{(2 rho - 1)/(L+1)}
  mpz_class U;                  // floor(2^{k-H} / S(k-H, H))
  mpz_class L;                  // ceil(2^k / S(k-H, H)), as printed
};
RobustTsBounds robust_ts_bounds(QueryBudget budget, long double M_over_m, long double rho);

struct RobustBiddingBounds {
  long double upper_cr = 0.0L;
  long double lower_cr = 0.0L;
  long double b_opt = 0.0L;      // minimizing base for the upper bound
  long double alpha_opt = 0.0L;  // minimizing growth rate for the lower bound
};
// Constrained one-dimensional minimizations; requires r >= 4.
RobustBiddingBounds robust_bidding_bounds(QueryBudget budget, long double r);

// Golden-section minimization of a unimodal function on [lo, hi].
long double golden_section_min(const std::function<long double(long double)>& f, long double lo,
                               long double hi, long double tol = 1e-12L);

}  // namespace ulam
