#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ulam/advice.hpp"
#include "ulam/bounds.hpp"
#include "ulam/budget.hpp"

namespace ulam {

// Item sizes are exact rationals so capacity accounting never drifts;
// values (hence densities) are reals.
struct KnapsackItem {
  long double value = 0.0L;
  mpq_class size;

  long double density() const { return value / to_ld(size); }
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  long double L = 1.0L;  // density lower bound
  long double U = 1.0L;  // density upper bound
  std::string id;

  void validate() const;
};

// Offline optimum: greedy by decreasing density, fractional fill to unit
// capacity.
long double knapsack_opt(const KnapsackInstance& instance);

// Density grid d_i = L beta^i (i in [0, s], beta = (U/L)^{1/s}) and
// capacity grid c_i = (beta^m - beta^{m-i}) / (beta^m - 1) (i in [0, m]),
// which satisfies c_0 = 0, c_m = 1 and c_{i+1} - c_i / beta = c_1.
struct KnapsackPartition {
  long s = 0;
  long m = 0;
  long double beta = 1.0L;
  std::vector<long double> d;
  std::vector<long double> c;

  static KnapsackPartition make(long s, long m, long double L, long double U);
};

struct KnapsackRunResult {
  long double profit = 0.0L;
  long double opt = 0.0L;
  long double ratio = 1.0L;
  long x = 0;  // identified density cell, 1-based
  long y = 0;  // identified capacity cell, 1-based
  long true_x = 0;
  long true_y = 0;
  SMChoice sm;
  bool no_advice = false;
  mpq_class used_capacity;  // exact; never exceeds 1
  ErrorReport error;
  long double bound_consistent = 0.0L;
};

// Advice-guided policy: locates (x, y) with one search over the s*m grid
// (row-major in x), reserves c_{y-1} for critical densities [d_{x-1}, d_x),
// accepts heavier items into the rest, rejects lighter ones.
KnapsackRunResult knapsack_run(const KnapsackInstance& instance, QueryBudget budget,
                               const ErrorPolicy& policy);

// Smallest accepted density and the optimal solution's slack fraction
// (empty or filled at that density).
struct KnapsackProfile {
  long double d_star = 0.0L;
  long double c_star = 0.0L;
};
KnapsackProfile knapsack_profile(const KnapsackInstance& instance);

// Lower-bound request family sigma_{x,y}: unit-size batches at densities
// d_1..d_{x-1} followed by a batch of total size c_y at density d_x, items
// of exact rational size epsilon.
std::vector<KnapsackInstance> knapsack_adversarial_instances(long s, long m, long double L,
                                                             long double U,
                                                             const mpq_class& epsilon);

// Capacity grid of the adversarial family: endpoints min/max{1/beta,
// 1-1/beta}, geometric in h(c) = 1 + c (beta - 1).
std::vector<long double> knapsack_adversarial_capacities(long m, long double beta);

}  // namespace ulam
