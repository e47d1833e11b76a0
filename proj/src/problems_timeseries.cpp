#include "ulam/problems/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ulam/games/discrete.hpp"

namespace ulam {

namespace {

constexpr long kMaxGrid = 1L << 22;

long mpz_to_long_capped(const mpz_class& z, const char* what) {
  if (z > kMaxGrid) throw std::domain_error(std::string(what) + " too large to materialize");
  return z.get_si();
}

}  // namespace

void PriceInstance::validate() const {
  if (prices.empty()) throw std::domain_error("price sequence is empty");
  if (!(m > 0.0L) || !(M >= m)) throw std::domain_error("need 0 < m <= M");
  for (long double p : prices) {
    if (!(p >= m * (1.0L - 1e-12L)) || !(p <= M * (1.0L + 1e-12L))) {
      throw std::domain_error("price outside [m, M]");
    }
  }
}

long double PriceInstance::max_price() const {
  return *std::max_element(prices.begin(), prices.end());
}

long double ReservationGrid::price(long i) const {
  return lo * std::pow(r, static_cast<long double>(i));
}

long ReservationGrid::best_index(long double pmax) const {
  // Largest i in [1, size] with a_i <= pmax; index 0 when even a_1 exceeds
  // the maximum (the reservation then never fires and the last price rules).
  long i = static_cast<long>(std::floor(std::log(pmax / lo) / std::log(r)));
  i = std::clamp(i, 0L, size);
  while (i < size && price(i + 1) <= pmax) ++i;
  while (i > 1 && price(i) > pmax) --i;
  return std::max(0L, i - 1);
}

ReservationGrid ts_reservation_grid(QueryBudget budget, long double m, long double M) {
  const long k = budget.k, H = budget.H;
  const mpz_class U = floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min<long>(H, k - H)));
  ReservationGrid g;
  g.size = mpz_to_long_capped(U, "reservation grid");
  g.lo = m;
  g.r = std::pow(M / m, 1.0L / static_cast<long double>(g.size + 1));
  return g;
}

RobustPriceBand ts_robust_band(long double m, long double M, long double rho) {
  const long double span = std::pow(M / m, rho);
  return {M / span, m * span};
}

namespace {

TsRunResult run_reservation_search(const PriceInstance& instance, QueryBudget budget,
                                   const ErrorPolicy& policy, const ReservationGrid& grid) {
  const long double pmax = instance.max_price();
  const long truth = grid.best_index(pmax);

  if (policy.kind == PolicyKind::Minimax) {
    // Resolved by exhausting flip patterns; worst ratio wins.
    TsRunResult worst;
    bool first = true;
    for (const auto& pattern : flip_patterns(budget.k, budget.H)) {
      ErrorPolicy fixed;
      fixed.kind = PolicyKind::Fixed;
      fixed.fixed_positions = pattern;
      TsRunResult r = run_reservation_search(instance, budget, fixed, grid);
      if (first || r.ratio > worst.ratio) {
        worst = r;
        first = false;
      }
    }
    return worst;
  }

  TruthFunctions truth_fns;
  truth_fns.comparison = [truth](long t) { return truth <= t; };
  auto shadow = policy.kind == PolicyKind::Greedy ? make_discrete_shadow(grid.size, budget) : nullptr;
  AdviceOracle oracle(truth_fns, budget, policy, std::move(shadow));

  const GameResult game = find_value(grid.size, budget, oracle);

  TsRunResult out;
  out.reservation_index = game.value;
  out.reservation = grid.price(game.value + 1);
  out.error = oracle.error_report();
  out.transcript = oracle.transcript();

  long double accepted = instance.prices.back();
  for (long double p : instance.prices) {
    if (p >= out.reservation) {
      accepted = p;
      break;
    }
  }
  out.accepted = accepted;
  out.ratio = pmax / accepted;
  return out;
}

}  // namespace

TsRunResult ts_run(const PriceInstance& instance, QueryBudget budget, const ErrorPolicy& policy) {
  instance.validate();
  const ReservationGrid grid = ts_reservation_grid(budget, instance.m, instance.M);
  TsRunResult out = run_reservation_search(instance, budget, policy, grid);
  out.bound_consistent = ts_bounds(budget, instance.M / instance.m).upper_cr;
  out.bound_robust = instance.M / instance.m;
  return out;
}

std::vector<PriceInstance> ts_adversarial_instances(QueryBudget budget, long double m,
                                                    long double M) {
  const mpz_class Lz = ceil_div(pow2(budget.k), partial_binomial_sum(budget.k, budget.H));
  const long L = mpz_to_long_capped(Lz, "adversarial family");
  const long double rp = std::pow(M / m, 1.0L / static_cast<long double>(L + 1));
  std::vector<PriceInstance> out;
  out.reserve(L + 1);
  for (long i = 1; i <= L + 1; ++i) {
    PriceInstance inst;
    inst.m = m;
    inst.M = M;
    inst.id = "sigma_" + std::to_string(i);
    inst.prices.push_back(m);
    for (long j = 1; j <= i; ++j) {
      inst.prices.push_back(j == L + 1 ? M : m * std::pow(rp, static_cast<long double>(j)));
    }
    inst.prices.push_back(m);
    out.push_back(std::move(inst));
  }
  return out;
}

TsRunResult ts_robust_run(const PriceInstance& instance, QueryBudget budget,
                          const ErrorPolicy& policy, long double rho) {
  if (!(rho > 0.5L && rho <= 1.0L)) throw std::domain_error("rho must lie in (1/2, 1]");
  instance.validate();
  const RobustPriceBand band = ts_robust_band(instance.m, instance.M, rho);
  const long k = budget.k, H = budget.H;
  const mpz_class U = floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min<long>(H, k - H)));
  ReservationGrid grid;
  grid.size = mpz_to_long_capped(U, "reservation grid");
  grid.lo = band.p1;
  grid.r = std::pow(band.p2 / band.p1, 1.0L / static_cast<long double>(grid.size + 1));
  TsRunResult out = run_reservation_search(instance, budget, policy, grid);
  out.bound_consistent = robust_ts_bounds(budget, instance.M / instance.m, rho).upper_cr;
  out.bound_robust = std::pow(instance.M / instance.m, rho);
  return out;
}

}  // namespace ulam
