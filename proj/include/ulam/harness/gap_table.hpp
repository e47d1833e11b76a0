#pragma once

#include <string>
#include <vector>

namespace ulam {

struct GapRow {
  std::string problem;
  int k = 0;
  double tau = 0.0;
  int H = 0;
  long double ub = 0.0L;
  long double lb = 0.0L;
  long double log_gap = 0.0L;       // log2(ub / lb)
  long double analytic_gap = 0.0L;  // bidding: the closed-form estimate of the log gap
};

// Upper/lower bound gap per (k, tau = H/k), H = floor(tau k). For the
// time-series problem the bounds depend on a reference ratio M/m.
std::vector<GapRow> gap_table(const std::string& problem, const std::vector<double>& taus,
                              const std::vector<int>& ks, long double ts_ratio = 100.0L);

std::string gap_table_csv(const std::vector<GapRow>& rows);

}  // namespace ulam
