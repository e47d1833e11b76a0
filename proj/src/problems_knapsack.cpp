#include "ulam/problems/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ulam/games/discrete.hpp"

namespace ulam {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

// Rational approximation of c from below, denominator 2^62; keeps the
// reserved capacities exact while staying within the analyzed budget.
mpq_class rationalize_down(long double c) {
  if (c <= 0.0L) return mpq_class(0);
  if (c >= 1.0L) return mpq_class(1);
  const long double scaled = std::floor(std::ldexp(c, 62));
  mpz_class num(0);
  mpz_set_d(num.get_mpz_t(), static_cast<double>(scaled));
  mpq_class q(num, mpz_class(1) << 62);
  q.canonicalize();
  return q;
}

// Cell of v in the grid [g_0, g_1, ..., g_n]: smallest i in [1, n] with
// v < g_i, boundaries snapped at relative 1e-9 and owned by the upper cell.
long cell_of(long double v, const std::vector<long double>& g) {
  const long n = static_cast<long>(g.size()) - 1;
  for (long i = 1; i < n; ++i) {
    const long double edge = g[i];
    if (v < edge * (1.0L - 1e-9L)) return i;
    if (v <= edge * (1.0L + 1e-9L)) return i + 1;  // on the boundary
  }
  return n;
}

}  // namespace

void KnapsackInstance::validate() const {
  if (items.empty()) throw std::domain_error("instance has no items");
  if (!(L > 0.0L) || !(U >= L)) throw std::domain_error("need 0 < L <= U");
  for (const auto& it : items) {
    if (it.size <= 0 || it.size > 1) throw std::domain_error("item size must lie in (0, 1]");
    const long double d = it.density();
    if (!(d >= L * (1.0L - 1e-9L)) || !(d <= U * (1.0L + 1e-9L))) {
      throw std::domain_error("item density outside [L, U]");
    }
  }
}

long double knapsack_opt(const KnapsackInstance& instance) {
  std::vector<std::size_t> order(instance.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.items[a].density() > instance.items[b].density();
  });
  mpq_class remaining(1);
  long double profit = 0.0L;
  for (std::size_t idx : order) {
    if (remaining <= 0) break;
    const auto& it = instance.items[idx];
    const mpq_class take = std::min(mpq_class(it.size), remaining);
    profit += to_ld(mpq_class(take / it.size)) * it.value;
    remaining -= take;
  }
  return profit;
}

namespace {

KnapsackProfile profile_impl(const KnapsackInstance& instance) {
  std::vector<std::size_t> order(instance.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.items[a].density() > instance.items[b].density();
  });
  mpq_class remaining(1);
  long double d_star = instance.items[order.front()].density();
  std::vector<std::pair<long double, mpq_class>> taken;  // (density, size)
  for (std::size_t idx : order) {
    if (remaining <= 0) break;
    const auto& it = instance.items[idx];
    const mpq_class take = std::min(mpq_class(it.size), remaining);
    if (take > 0) {
      d_star = it.density();
      taken.emplace_back(d_star, take);
      remaining -= take;
    }
  }
  mpq_class above(0);
  for (const auto& [d, sz] : taken) {
    if (d > d_star * (1.0L + 1e-12L)) above += sz;
  }
  KnapsackProfile p;
  p.d_star = d_star;
  p.c_star = to_ld(mpq_class(1 - above));
  return p;
}

}  // namespace

KnapsackProfile knapsack_profile(const KnapsackInstance& instance) {
  return profile_impl(instance);
}

KnapsackPartition KnapsackPartition::make(long s, long m, long double L, long double U) {
  if (s < 1 || m < 1) throw std::domain_error("partition needs s, m >= 1");
  KnapsackPartition p;
  p.s = s;
  p.m = m;
  p.beta = std::pow(U / L, 1.0L / static_cast<long double>(s));
  p.d.resize(s + 1);
  for (long i = 0; i <= s; ++i) {
    p.d[i] = i == s ? U : L * std::pow(p.beta, static_cast<long double>(i));
  }
  p.c.resize(m + 1);
  const long double bm = std::pow(p.beta, static_cast<long double>(m));
  for (long i = 0; i <= m; ++i) {
    p.c[i] = (bm - std::pow(p.beta, static_cast<long double>(m - i))) / (bm - 1.0L);
  }
  p.c[0] = 0.0L;
  p.c[m] = 1.0L;
  return p;
}

KnapsackRunResult knapsack_run(const KnapsackInstance& instance, QueryBudget budget,
                               const ErrorPolicy& policy) {
  instance.validate();
  const KnapsackBounds kb = knapsack_bounds(budget, instance.U / instance.L);

  KnapsackRunResult out;
  if (kb.no_advice) {
    // No (s, m) fits the budget: no partition to search, accept greedily by
    // arrival; the bound is the +infinity sentinel.
    out.no_advice = true;
    out.bound_consistent = kInf;
    mpq_class remaining(1);
    for (const auto& it : instance.items) {
      if (remaining <= 0) break;
      const mpq_class take = std::min(mpq_class(it.size), remaining);
      out.profit += to_ld(mpq_class(take / it.size)) * it.value;
      remaining -= take;
    }
    out.used_capacity = 1 - remaining;
    out.opt = knapsack_opt(instance);
    out.ratio = out.profit > 0.0L ? out.opt / out.profit : kInf;
    return out;
  }

  if (policy.kind == PolicyKind::Minimax) {
    KnapsackRunResult worst;
    bool first = true;
    for (const auto& pattern : flip_patterns(budget.k, budget.H)) {
      ErrorPolicy fixed;
      fixed.kind = PolicyKind::Fixed;
      fixed.fixed_positions = pattern;
      KnapsackRunResult r = knapsack_run(instance, budget, fixed);
      if (first || r.ratio > worst.ratio) {
        worst = r;
        first = false;
      }
    }
    return worst;
  }

  const long s = kb.upper_sm.s;
  const long m = kb.upper_sm.m;
  const KnapsackPartition part = KnapsackPartition::make(s, m, instance.L, instance.U);
  out.sm = kb.upper_sm;
  out.bound_consistent = kb.upper_cr;

  const KnapsackProfile profile = profile_impl(instance);
  out.true_x = cell_of(profile.d_star, part.d);
  out.true_y = cell_of(profile.c_star, part.c);
  const long truth_id = (out.true_x - 1) * m + (out.true_y - 1);  // row-major in x

  TruthFunctions truth_fns;
  truth_fns.comparison = [truth_id](long t) { return truth_id <= t; };
  auto shadow = policy.kind == PolicyKind::Greedy ? make_discrete_shadow(s * m, budget) : nullptr;
  AdviceOracle oracle(truth_fns, budget, policy, std::move(shadow));
  const GameResult game = find_value(s * m, budget, oracle);
  out.error = oracle.error_report();

  out.x = game.value / m + 1;
  out.y = game.value % m + 1;

  const mpq_class reserve = rationalize_down(part.c[out.y - 1]);
  mpq_class crit_used(0), heavy_used(0);
  const long double d_lo = part.d[out.x - 1];
  const long double d_hi = part.d[out.x];
  for (const auto& it : instance.items) {
    const long double dens = it.density();
    mpq_class space(0);
    bool heavy = false;
    if (dens >= d_hi * (1.0L - 1e-12L)) {
      heavy = true;
      space = mpq_class(1) - reserve - heavy_used;
    } else if (dens >= d_lo * (1.0L - 1e-12L)) {
      space = reserve - crit_used;
    } else {
      continue;  // lighter than the critical band
    }
    if (space <= 0) continue;
    const mpq_class take = std::min(mpq_class(it.size), space);
    out.profit += to_ld(mpq_class(take / it.size)) * it.value;
    (heavy ? heavy_used : crit_used) += take;
  }
  out.used_capacity = crit_used + heavy_used;
  out.opt = knapsack_opt(instance);
  out.ratio = out.profit > 0.0L ? out.opt / out.profit : kInf;
  return out;
}

std::vector<long double> knapsack_adversarial_capacities(long m, long double beta) {
  if (m < 1) throw std::domain_error("need m >= 1");
  if (!(beta > 1.0L)) throw std::domain_error("need beta > 1");
  const long double inv = 1.0L / beta;
  const long double c0 = std::min(inv, 1.0L - inv);
  const long double cm = std::max(inv, 1.0L - inv);
  // Geometric walk in h(c) = 1 + c (beta - 1), which carries the value of
  // the optimum across adjacent capacities.
  const long double h0 = 1.0L + c0 * (beta - 1.0L);
  const long double hm = 1.0L + cm * (beta - 1.0L);
  const long double step = std::pow(hm / h0, 1.0L / static_cast<long double>(m));
  std::vector<long double> c(m + 1);
  for (long j = 0; j <= m; ++j) {
    const long double hj = h0 * std::pow(step, static_cast<long double>(j));
    c[j] = (hj - 1.0L) / (beta - 1.0L);
  }
  c[0] = c0;
  c[m] = cm;
  return c;
}

std::vector<KnapsackInstance> knapsack_adversarial_instances(long s, long m, long double L,
                                                             long double U,
                                                             const mpq_class& epsilon) {
  if (s < 1 || m < 1) throw std::domain_error("need s, m >= 1");
  if (epsilon <= 0 || epsilon > 1) throw std::domain_error("epsilon must lie in (0, 1]");
  const long double beta = std::pow(U / L, 1.0L / static_cast<long double>(s));
  const auto caps = knapsack_adversarial_capacities(m, beta);
  const long double eps_ld = to_ld(epsilon);
  const mpq_class inv = 1 / mpq_class(epsilon);
  const long per_unit = static_cast<long>(mpz_class(inv.get_num() / inv.get_den()).get_si());

  std::vector<KnapsackInstance> out;
  out.reserve(s * m);
  for (long x = 1; x <= s; ++x) {
    for (long y = 1; y <= m; ++y) {
      KnapsackInstance inst;
      inst.L = L;
      inst.U = U;
      inst.id = "sigma_" + std::to_string(x) + "_" + std::to_string(y);
      for (long i = 1; i < x; ++i) {
        const long double d = L * std::pow(beta, static_cast<long double>(i));
        for (long t = 0; t < per_unit; ++t) {
          inst.items.push_back({eps_ld * d, epsilon});
        }
      }
      const long double d_top = L * std::pow(beta, static_cast<long double>(x));
      const long count = static_cast<long>(std::floor(caps[y] / eps_ld));
      for (long t = 0; t < std::max(1L, count); ++t) {
        inst.items.push_back({eps_ld * d_top, epsilon});
      }
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace ulam
