#include "ulam/harness/gap_table.hpp"

#include <cmath>
#include <stdexcept>

#include "ulam/bounds.hpp"
#include "ulam/harness/experiment.hpp"
#include "ulam/partial_sums.hpp"

namespace ulam {

namespace {

// Closed-form estimate of log(UB/LB) for bidding at tau = H/k:
//   sqrt(8 k t (1-t)) k (1-t)(1 - Hb(t/(1-t))) / 2^{k(1-t)(1-Hb(t/(1-t)))}
//   - k (1 - Hb(t)) / 2^{k(1 - Hb(t))}
long double bidding_analytic_gap(int k, double tau) {
  if (tau <= 0.0) {
    return -static_cast<long double>(k) * std::exp2l(-static_cast<long double>(k));
  }
  const long double t = tau;
  const long double inner = t / (1.0L - t);
  const long double h_inner = inner >= 1.0L ? 1.0L : entropy(inner);
  const long double e1 = static_cast<long double>(k) * (1.0L - t) * (1.0L - h_inner);
  const long double e2 = static_cast<long double>(k) * (1.0L - entropy(t));
  const long double first =
      std::sqrt(8.0L * k * t * (1.0L - t)) * static_cast<long double>(k) * (1.0L - t) *
      (1.0L - h_inner) / std::exp2l(e1);
  const long double second = static_cast<long double>(k) * (1.0L - entropy(t)) / std::exp2l(e2);
  return first - second;
}

}  // namespace

std::vector<GapRow> gap_table(const std::string& problem, const std::vector<double>& taus,
                              const std::vector<int>& ks, long double ts_ratio) {
  if (problem != "ts" && problem != "bidding") {
    throw std::invalid_argument("gap table covers ts and bidding");
  }
  std::vector<GapRow> rows;
  for (double tau : taus) {
    if (!(tau >= 0.0 && tau < 0.5)) throw std::domain_error("tau must lie in [0, 1/2)");
    for (int k : ks) {
      GapRow row;
      row.problem = problem;
      row.k = k;
      row.tau = tau;
      row.H = static_cast<int>(tau * k);
      if (2 * row.H > k) row.H = k / 2;
      const QueryBudget budget(k, row.H);
      if (problem == "ts") {
        const TsBounds b = ts_bounds(budget, ts_ratio);
        row.ub = b.upper_cr;
        row.lb = b.lower_cr;
      } else {
        row.ub = bidding_upper_bound(budget);
        row.lb = bidding_lower_bound(budget);
        row.analytic_gap = bidding_analytic_gap(k, tau);
      }
      row.log_gap = std::log2(row.ub / row.lb);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string gap_table_csv(const std::vector<GapRow>& rows) {
  std::string out = "problem,k,tau,H,ub,lb,log_gap,analytic_gap\r\n";
  for (const auto& r : rows) {
    out += r.problem + ',' + std::to_string(r.k) + ',' + format_real(r.tau) + ',' +
           std::to_string(r.H) + ',' + format_real(r.ub) + ',' + format_real(r.lb) + ',' +
           format_real(r.log_gap) + ',' + format_real(r.analytic_gap) + "\r\n";
  }
  return out;
}

}  // namespace ulam
