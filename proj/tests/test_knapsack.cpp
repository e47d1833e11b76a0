#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ulam/problems/knapsack.hpp"

using namespace ulam;

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Brute-force fractional optimum over a grid of acceptance fractions;
// independent of the greedy path.
long double brute_force_opt(const KnapsackInstance& inst, int steps = 6) {
  long double best = 0.0L;
  std::vector<int> choice(inst.items.size(), 0);
  const std::size_t n = inst.items.size();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      mpq_class used(0);
      long double profit = 0.0L;
      for (std::size_t j = 0; j < n; ++j) {
        const mpq_class frac(choice[j], steps);
        used += frac * inst.items[j].size;
        profit += to_ld(frac) * inst.items[j].value;
      }
      if (used <= 1 && profit > best) best = profit;
      return;
    }
    for (int c = 0; c <= steps; ++c) {
      choice[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("offline optimum: pinned values") {
  KnapsackInstance a;
  a.L = 1.0L;
  a.U = 10.0L;
  a.items = {{2.0L, mpq_class(1, 2)}};
  CHECK(static_cast<double>(knapsack_opt(a)) == doctest::Approx(2.0));

  KnapsackInstance b;
  b.L = 1.0L;
  b.U = 2.0L;
  b.items = {{1.0L, mpq_class(1)}, {2.0L, mpq_class(1)}};
  CHECK(static_cast<double>(knapsack_opt(b)) == doctest::Approx(2.0));
}

TEST_CASE("offline optimum matches a brute-force oracle on small instances") {
  for (int trial = 0; trial < 12; ++trial) {
    KnapsackInstance inst;
    inst.L = 1.0L;
    inst.U = 8.0L;
    const int n = 3 + static_cast<int>(mix(trial) % 3);
    for (int i = 0; i < n; ++i) {
      const long den = 4 + static_cast<long>(mix(trial * 31 + i) % 5);
      const long num = 1 + static_cast<long>(mix(trial * 37 + i) % den);
      mpq_class size(num, den);
      size.canonicalize();
      const long double dens =
          1.0L + static_cast<long double>(mix(trial * 41 + i) % 7000) / 1000.0L;
      inst.items.push_back({dens * to_ld(size), size});
    }
    const long double opt = knapsack_opt(inst);
    const long double brute = brute_force_opt(inst);
    CHECK(opt >= brute * (1.0L - 1e-12L));  // greedy dominates the grid search
    CHECK(opt <= brute * 1.35L);            // and the grid is near it
  }
}

TEST_CASE("partition grids: endpoints and the c-chain identity") {
  const auto p = KnapsackPartition::make(4, 5, 1.0L, 16.0L);
  CHECK(static_cast<double>(p.d[0]) == doctest::Approx(1.0));
  CHECK(static_cast<double>(p.d[4]) == doctest::Approx(16.0));
  CHECK(p.c[0] == 0.0L);
  CHECK(p.c[5] == 1.0L);
  const long double beta = p.beta;
  CHECK(static_cast<double>(beta) == doctest::Approx(2.0).epsilon(1e-14));
  // c_1 = (beta^m - beta^{m-1})/(beta^m - 1) and the constant-step identity.
  const long double bm = std::pow(beta, 5.0L);
  CHECK(static_cast<double>(p.c[1]) ==
        doctest::Approx(static_cast<double>((bm - bm / beta) / (bm - 1.0L))).epsilon(1e-14));
  for (long i = 2; i <= 5; ++i) {
    CHECK(static_cast<double>(p.c[i] - p.c[i - 1] / beta) ==
          doctest::Approx(static_cast<double>(p.c[1])).epsilon(1e-12));
  }
  for (long i = 1; i <= 5; ++i) CHECK(p.c[i] > p.c[i - 1]);
}

TEST_CASE("uniform-density full-size instance is served optimally") {
  KnapsackInstance inst;
  inst.L = 1.0L;
  inst.U = 16.0L;
  for (int i = 0; i < 10; ++i) inst.items.push_back({0.1L, mpq_class(1, 10)});
  const auto r = knapsack_run(inst, QueryBudget(8, 0), truth_policy());
  CHECK(static_cast<double>(r.ratio) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.used_capacity == 1);
}

TEST_CASE("adversarial capacity grid endpoints") {
  for (long double beta : {1.5L, 2.0L, 4.0L}) {
    const auto c = knapsack_adversarial_capacities(3, beta);
    const long double inv = 1.0L / beta;
    CHECK(static_cast<double>(c.front()) ==
          doctest::Approx(static_cast<double>(std::min(inv, 1.0L - inv))));
    CHECK(static_cast<double>(c.back()) ==
          doctest::Approx(static_cast<double>(std::max(inv, 1.0L - inv))));
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
  }
}

TEST_CASE("adversarial family: totals, prefixes, and the optimum identity") {
  const long s = 3, m = 3;
  const long double L = 1.0L, U = 16.0L;
  const mpq_class eps(1, 1000);
  const auto family = knapsack_adversarial_instances(s, m, L, U, eps);
  CHECK(family.size() == static_cast<std::size_t>(s * m));
  const long double beta = std::pow(U / L, 1.0L / 3.0L);
  const auto caps = knapsack_adversarial_capacities(m, beta);

  for (long x = 1; x <= s; ++x) {
    for (long y = 1; y <= m; ++y) {
      const auto& inst = family[(x - 1) * m + (y - 1)];
      mpq_class total(0);
      for (const auto& it : inst.items) total += it.size;
      const long double want = static_cast<long double>(x - 1) + caps[y];
      CHECK(std::fabs(static_cast<double>(to_ld(total) - want)) <= 1e-3);

      if (y < m) {
        const auto& next = family[(x - 1) * m + y];
        for (std::size_t j = 0; j < inst.items.size(); ++j) {
          CHECK(inst.items[j].size == next.items[j].size);
          CHECK(inst.items[j].value == next.items[j].value);
        }
      }
      if (x >= 2) {
        const long double d_hi = L * std::pow(beta, static_cast<long double>(x));
        const long double d_lo = L * std::pow(beta, static_cast<long double>(x - 1));
        const long double opt_formula = (1.0L - caps[y]) * d_lo + caps[y] * d_hi;
        CHECK(static_cast<double>(knapsack_opt(inst)) ==
              doctest::Approx(static_cast<double>(opt_formula)).epsilon(3e-3));
      }
    }
  }
  SUBCASE("sigma_{x,m} is a prefix of sigma_{x+1,1}") {
    const auto& a = family[0 * m + (m - 1)];  // x=1, y=m
    const auto& b = family[1 * m + 0];        // x=2, y=1
    CHECK(a.items.size() <= b.items.size());
    for (std::size_t j = 0; j < a.items.size(); ++j) {
      CHECK(a.items[j].value == b.items[j].value);
    }
  }
}

TEST_CASE("knapsack run respects capacity exactly and the bound on sigma instances") {
  const QueryBudget budget(8, 1);
  const auto kb = knapsack_bounds(budget, 16.0L);
  REQUIRE(!kb.no_advice);
  const auto family = knapsack_adversarial_instances(kb.upper_sm.s, kb.upper_sm.m, 1.0L, 16.0L,
                                                     mpq_class(1, 1000));
  for (const auto& inst : family) {
    const auto r = knapsack_run(inst, budget, truth_policy());
    CHECK(r.used_capacity <= 1);
    CHECK(r.error.eta == 0);
    CHECK(r.ratio <= kb.upper_cr + 1e-6L);
    CHECK(r.x == r.true_x);
    CHECK(r.y == r.true_y);
  }
}

TEST_CASE("no-advice budget reports the sentinel") {
  KnapsackInstance inst;
  inst.L = 1.0L;
  inst.U = 16.0L;
  inst.items = {{1.0L, mpq_class(1, 2)}};
  const auto r = knapsack_run(inst, QueryBudget(0, 0), truth_policy());
  CHECK(r.no_advice);
  CHECK(std::isinf(r.bound_consistent));
  CHECK(r.used_capacity <= 1);
}
