#include "ulam/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ulam {

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  if (is_infinite) {
    j["value"] = "inf";
  } else {
    j["value"] = static_cast<double>(value);
  }
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [key, val] : formula_inputs) inputs[key] = val;
  j["formula_inputs"] = inputs;
  return j;
}

long double bidding_f(long double x) {
  if (!(x > 0.0L)) throw std::domain_error("f requires x > 0");
  return std::exp((1.0L + 1.0L / x) * std::log1p(x) - std::log(x));
}

TsBounds ts_bounds(QueryBudget budget, long double M_over_m) {
  if (!(M_over_m > 1.0L)) throw std::domain_error("price ratio must exceed 1");
  TsBounds r;
  const long k = budget.k, H = budget.H;
  r.U = floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min<long>(H, k - H)));
  r.L = ceil_div(pow2(k), partial_binomial_sum(k, H));
  r.upper_cr = std::pow(M_over_m, 1.0L / (to_ld(r.U) + 1.0L));
  r.lower_cr = std::pow(M_over_m, 1.0L / (to_ld(r.L) + 1.0L));
  return r;
}

mpz_class bidding_rank_budget(QueryBudget budget) {
  const long k = budget.k, H = budget.H;
  const mpz_class raw = pow2(H) * partial_binomial_sum(k - H, std::min<long>(H, k - H));
  const mpz_class cap = pow2(k) - 1;
  return raw > cap ? cap : raw;
}

long double bidding_upper_bound(QueryBudget budget) {
  const long double U = to_ld(bidding_rank_budget(budget));
  const long double n = to_ld(pow2(budget.k));
  return bidding_f(n / (1.0L + U));
}

long double bidding_optimal_base(QueryBudget budget) {
  const long double U = to_ld(bidding_rank_budget(budget));
  const long double n = to_ld(pow2(budget.k));
  return std::pow((n + U + 1.0L) / (U + 1.0L), 1.0L / n);
}

long double bidding_lower_bound(QueryBudget budget) {
  const mpq_class L(pow2(budget.k), partial_binomial_sum(budget.k, budget.H));
  return bidding_f(to_ld(L));
}

long double fpb_lower_bound(long p, long phi, long double alpha) {
  if (p < 1 || phi < 0 || phi >= p) throw std::domain_error("need 0 <= phi < p");
  if (!(alpha > 1.0L)) return std::numeric_limits<long double>::infinity();
  return std::pow(alpha, static_cast<long double>(p + 1 + phi)) /
         (std::pow(alpha, static_cast<long double>(p)) - 1.0L);
}

long double knapsack_fm(long m, long double beta) {
  if (m < 2) throw std::domain_error("f_m needs m >= 2");
  return (std::pow(beta, static_cast<long double>(m)) - 1.0L) /
         (std::pow(beta, static_cast<long double>(m - 1)) - 1.0L);
}

long double knapsack_gm(long m, long double beta) {
  if (m < 1) throw std::domain_error("g_m needs m >= 1");
  const long double base = (beta * beta - beta + 1.0L) / (2.0L * beta + 1.0L);
  return std::pow(base, 1.0L / static_cast<long double>(m + 1));
}

namespace {

// Enumeration guard: caps above this are truncated (the minimum keeps
// improving as s, m grow jointly, so huge budgets are reported from the
// clipped range).
constexpr long kEnumStop = 1 << 20;

long cap_to_long(const mpz_class& cap) {
  if (cap > kEnumStop) return kEnumStop;
  if (cap < 0) return 0;
  return cap.get_si();
}

}  // namespace

KnapsackBounds knapsack_bounds(QueryBudget budget, long double U_over_L) {
  if (!(U_over_L > 1.0L)) throw std::domain_error("density ratio must exceed 1");
  KnapsackBounds r;
  const long k = budget.k, H = budget.H;
  r.upper_cap = floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min<long>(H, k - H)));
  r.lower_cap = ceil_div(pow2(k), partial_binomial_sum(k, H)) + 1;

  const long ucap = cap_to_long(r.upper_cap);
  r.upper_cr = std::numeric_limits<long double>::infinity();
  for (long s = 1; 2 * s <= ucap; ++s) {
    const long double beta = std::pow(U_over_L, 1.0L / static_cast<long double>(s));
    for (long m = 2; s * m <= ucap; ++m) {
      const long double v = knapsack_fm(m, beta);
      if (v < r.upper_cr) {
        r.upper_cr = v;
        r.upper_sm = {s, m};
      }
    }
  }
  if (r.upper_sm.s == 0) {
    r.no_advice = true;  // m >= 2 never fits: report the sentinel
  }

  const long lcap = cap_to_long(r.lower_cap);
  r.lower_cr = std::numeric_limits<long double>::infinity();
  for (long s = 1; s <= lcap; ++s) {
    const long double beta = std::pow(U_over_L, 1.0L / static_cast<long double>(s));
    for (long m = 1; s * m <= lcap; ++m) {
      const long double v = knapsack_gm(m, beta);
      if (v < r.lower_cr) {
        r.lower_cr = v;
        r.lower_sm = {s, m};
      }
    }
  }
  return r;
}

long double resource_augmentation_size(long k, long double c) {
  if (k < 1) throw std::domain_error("advice size must be positive");
  if (!(c > 0.0L && c < 1.0L / 3.0L)) throw std::domain_error("c must lie in (0, 1/3)");
  const long double outer = 2.0L / 3.0L + c;
  const long double inner = (1.0L / 3.0L - c) / outer;
  return static_cast<long double>(k) / (outer * (1.0L - entropy(inner))) + 1.0L;
}

RobustTsBounds robust_ts_bounds(QueryBudget budget, long double M_over_m, long double rho) {
  if (!(rho > 0.5L && rho <= 1.0L)) throw std::domain_error("rho must lie in (1/2, 1]");
  if (!(M_over_m > 1.0L)) throw std::domain_error("price ratio must exceed 1");
  RobustTsBounds r;
  const long k = budget.k, H = budget.H;
  const mpz_class s_kh = partial_binomial_sum(k - H, std::min<long>(H, k - H));
  r.U = floor_div(pow2(k - H), s_kh);
  r.L = ceil_div(pow2(k), s_kh);
  const long double e = 2.0L * rho - 1.0L;
  r.upper_cr = std::pow(M_over_m, e / (to_ld(r.U) + 1.0L));
  r.lower_cr = std::pow(M_over_m, e / (to_ld(r.L) + 1.0L));
  return r;
}

long double golden_section_min(const std::function<long double(long double)>& f, long double lo,
                               long double hi, long double tol) {
  const long double inv_phi = 0.5L * (std::sqrt(5.0L) - 1.0L);
  long double a = lo, b = hi;
  long double c = b - inv_phi * (b - a);
  long double d = a + inv_phi * (b - a);
  long double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0L, std::fabs(a))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5L * (a + b);
}

namespace {

// Feasible growth z of z^2/(z-1) <= r, i.e. the root interval of
// z^2 - r z + r = 0; nonempty for every r >= 4.
std::pair<long double, long double> robust_z_interval(long double r) {
  const long double disc = std::sqrt(r * r - 4.0L * r);
  return {(r - disc) / 2.0L, (r + disc) / 2.0L};
}

}  // namespace

RobustBiddingBounds robust_bidding_bounds(QueryBudget budget, long double r) {
  if (!(r >= 4.0L)) throw std::domain_error("robustness requires r >= 4");
  RobustBiddingBounds out;
  const long double n = to_ld(pow2(budget.k));

  {
    // Upper: minimize b^{2^k + U + 1} / (b^{2^k} - 1) with the whole family
    // r-robust, i.e. z = b^{2^k} satisfying z^2/(z-1) <= r.
    const long double U = to_ld(bidding_rank_budget(budget));
    auto [zlo, zhi] = robust_z_interval(r);
    zlo = std::max(zlo, 1.0L + 1e-9L);
    const long double exponent = 1.0L + (U + 1.0L) / n;
    auto obj = [&](long double logz) {
      const long double z = std::exp(logz);
      return exponent * logz - std::log(z - 1.0L);
    };
    const long double logz = golden_section_min(obj, std::log(zlo), std::log(zhi));
    // The objective is unimodal; the constrained optimum is interior or at
    // the boundary the search converged to.
    out.upper_cr = std::exp(obj(logz));
    out.b_opt = std::exp(logz / n);
  }

  {
    // Lower: minimize a^{2^k + L + 1} / (a^{2^k} - 1) with L = S(k, H),
    // subject to a^{2k}/(a^k - 1) <= r as printed; for k = 0 that constraint
    // is degenerate and the per-sequence condition a^2/(a-1) <= r applies.
    const long double L = to_ld(partial_binomial_sum(budget.k, budget.H));
    const long k = budget.k;
    auto [zlo, zhi] = robust_z_interval(r);
    zlo = std::max(zlo, 1.0L + 1e-9L);
    long double alo, ahi;
    if (k >= 1) {
      alo = std::pow(zlo, 1.0L / static_cast<long double>(k));
      ahi = std::pow(zhi, 1.0L / static_cast<long double>(k));
    } else {
      alo = zlo;
      ahi = zhi;
    }
    const long double exponent = n + L + 1.0L;
    auto obj = [&](long double loga) {
      const long double w = n * loga;  // log a^{2^k}
      const long double log_den = w > 50.0L ? w + std::log1p(-std::exp(-w)) : std::log(std::expm1(w));
      return exponent * loga - log_den;
    };
    const long double loga = golden_section_min(obj, std::log(alo), std::log(ahi));
    out.lower_cr = std::exp(obj(loga));
    out.alpha_opt = std::exp(loga);
  }
  return out;
}

}  // namespace ulam
