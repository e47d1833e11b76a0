#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ulam/bounds.hpp"

using namespace ulam;

namespace {

// Independent coarse-scan minimizer used to cross-check the closed forms.
long double scan_min(const std::function<long double(long double)>& f, long double lo,
                     long double hi, int rounds = 6) {
  long double best_x = lo, best = f(lo);
  for (int r = 0; r < rounds; ++r) {
    const long step = 4000;
    for (long i = 0; i <= step; ++i) {
      const long double x = lo + (hi - lo) * static_cast<long double>(i) / step;
      const long double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    const long double width = (hi - lo) / 10.0L;
    lo = std::max(lo, best_x - width);
    hi = std::min(hi, best_x + width);
  }
  return best;
}

}  // namespace

TEST_CASE("f(x): pinned values and shape") {
  CHECK(std::abs(static_cast<double>(bidding_f(1.0L) - 4.0L)) < 1e-15);
  CHECK(bidding_f(2.0L) < bidding_f(1.0L));
  CHECK(bidding_f(100.0L) < bidding_f(10.0L));
  CHECK(bidding_f(1e8L) > 1.0L);
  CHECK_THROWS_AS(bidding_f(0.0L), std::domain_error);
}

TEST_CASE("ts bounds: pinned values") {
  const auto a = ts_bounds(QueryBudget(4, 0), 16.0L);
  CHECK(a.U == 16);
  CHECK(a.L == 16);
  CHECK(static_cast<double>(a.upper_cr) ==
        doctest::Approx(std::pow(16.0, 1.0 / 17.0)).epsilon(1e-14));
  CHECK(a.upper_cr == a.lower_cr);

  const auto b = ts_bounds(QueryBudget(4, 1), 100.0L);
  CHECK(b.U == 2);
  CHECK(b.L == 4);
  CHECK(static_cast<double>(b.upper_cr) ==
        doctest::Approx(std::pow(100.0, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(static_cast<double>(b.lower_cr) ==
        doctest::Approx(std::pow(100.0, 1.0 / 5.0)).epsilon(1e-14));

  const auto c = ts_bounds(QueryBudget(6, 1), 100.0L);
  CHECK(c.U == 5);
  CHECK(static_cast<double>(c.upper_cr) ==
        doctest::Approx(std::pow(100.0, 1.0 / 6.0)).epsilon(1e-14));

  CHECK(b.upper_cr >= b.lower_cr);
  CHECK_THROWS_AS(ts_bounds(QueryBudget(4, 1), 1.0L), std::domain_error);
}

TEST_CASE("bidding upper bound: no-advice budget gives the doubling constant") {
  CHECK(static_cast<double>(bidding_upper_bound(QueryBudget(0, 0))) ==
        doctest::Approx(4.0).epsilon(1e-15));
  CHECK(bidding_rank_budget(QueryBudget(0, 0)) == 0);  // capped at the family size
}

TEST_CASE("bidding upper bound: equals f(2^k/(U+1)) and the numeric minimization") {
  for (int k : {2, 4, 6}) {
    for (int H = 0; 2 * H <= k && H <= 1; ++H) {
      const QueryBudget budget(k, H);
      const long double U = to_ld(bidding_rank_budget(budget));
      const long double n = std::exp2l(k);
      const long double closed = bidding_upper_bound(budget);
      CHECK(static_cast<double>(closed) ==
            doctest::Approx(static_cast<double>(bidding_f(n / (1.0L + U)))).epsilon(1e-15));
      // Independent route: minimize b^{2^k+1+U}/(b^{2^k}-1) by scanning.
      const long double scanned = scan_min(
          [&](long double lb) {
            return (n + U + 1.0L) * lb - std::log(std::expm1(n * lb));
          },
          1e-9L, std::log(8.0L));
      CHECK(static_cast<double>(std::exp(scanned)) ==
            doctest::Approx(static_cast<double>(closed)).epsilon(1e-9));
    }
  }
  SUBCASE("k=4 H=0 is f(16/2)") {
    CHECK(static_cast<double>(bidding_upper_bound(QueryBudget(4, 0))) ==
          doctest::Approx(static_cast<double>(bidding_f(8.0L))).epsilon(1e-15));
  }
}

TEST_CASE("bidding lower bound: pinned and dominated by the upper bound") {
  CHECK(static_cast<double>(bidding_lower_bound(QueryBudget(0, 0))) ==
        doctest::Approx(4.0).epsilon(1e-15));
  // f(16/5) at k=4, H=1
  CHECK(static_cast<double>(bidding_lower_bound(QueryBudget(4, 1))) ==
        doctest::Approx(static_cast<double>(bidding_f(16.0L / 5.0L))).epsilon(1e-15));
  for (int k = 0; k <= 20; ++k) {
    for (int H = 0; 2 * H <= k; ++H) {
      const QueryBudget budget(k, H);
      CHECK(bidding_lower_bound(budget) <= bidding_upper_bound(budget) * (1.0L + 1e-15L));
    }
  }
}

TEST_CASE("fpb lower bound: pinned values") {
  CHECK(static_cast<double>(fpb_lower_bound(1, 0, 2.0L)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(static_cast<double>(fpb_lower_bound(2, 1, 2.0L)) ==
        doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  // alpha = 2 minimizes the single-sequence expression.
  const long double at_min = scan_min(
      [](long double a) { return fpb_lower_bound(1, 0, a); }, 1.001L, 8.0L);
  CHECK(static_cast<double>(at_min) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(std::isinf(fpb_lower_bound(1, 0, 1.0L)));
  CHECK(std::isinf(fpb_lower_bound(1, 0, 0.5L)));
  CHECK_THROWS_AS(fpb_lower_bound(1, 1, 2.0L), std::domain_error);
}

TEST_CASE("knapsack bound shapes") {
  SUBCASE("g closed form at s=1, m=1") {
    const long double beta = 7.0L;
    CHECK(static_cast<double>(knapsack_gm(1, beta)) ==
          doctest::Approx(std::sqrt((49.0 - 7.0 + 1.0) / (14.0 + 1.0))).epsilon(1e-14));
  }
  SUBCASE("f_m exceeds beta and decreases toward it in m") {
    for (long double beta : {1.3L, 2.0L, 5.0L}) {
      long double prev = knapsack_fm(2, beta);
      CHECK(prev == doctest::Approx(static_cast<double>(beta + 1.0L)).epsilon(1e-14));
      for (long m = 3; m <= 12; ++m) {
        const long double cur = knapsack_fm(m, beta);
        CHECK(cur > beta);
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }
  SUBCASE("minimizer matches the exhaustive oracle at k=10, H=0, U/L=1024") {
    const auto kb = knapsack_bounds(QueryBudget(10, 0), 1024.0L);
    CHECK(!kb.no_advice);
    long double best = 1e30L;
    long bs = 0, bm = 0;
    for (long s = 1; s <= 1024; ++s) {
      for (long m = 2; s * m <= 1024; ++m) {
        const long double v = knapsack_fm(m, std::pow(1024.0L, 1.0L / s));
        if (v < best) {
          best = v;
          bs = s;
          bm = m;
        }
      }
    }
    CHECK(kb.upper_sm.s == bs);
    CHECK(kb.upper_sm.m == bm);
    CHECK(static_cast<double>(kb.upper_cr) == doctest::Approx(static_cast<double>(best)));
  }
  SUBCASE("no-advice sentinel when nothing fits") {
    const auto kb = knapsack_bounds(QueryBudget(0, 0), 16.0L);
    CHECK(kb.no_advice);
    CHECK(std::isinf(kb.upper_cr));
  }
}

TEST_CASE("resource augmentation size") {
  // c -> 1/3 collapses the entropy penalty: l -> k + 1.
  CHECK(static_cast<double>(resource_augmentation_size(30, 1.0L / 3.0L - 1e-9L)) ==
        doctest::Approx(31.0).epsilon(1e-4));
  const long double direct =
      30.0L / ((2.0L / 3.0L + 0.1L) *
               (1.0L - entropy((1.0L / 3.0L - 0.1L) / (2.0L / 3.0L + 0.1L)))) +
      1.0L;
  CHECK(static_cast<double>(resource_augmentation_size(30, 0.1L)) ==
        doctest::Approx(static_cast<double>(direct)).epsilon(1e-15));
  long double prev = resource_augmentation_size(30, 0.01L);
  for (long double c = 0.03L; c < 1.0L / 3.0L; c += 0.02L) {
    const long double cur = resource_augmentation_size(30, c);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(resource_augmentation_size(30, 0.34L), std::domain_error);
  CHECK_THROWS_AS(resource_augmentation_size(30, 0.0L), std::domain_error);
}

TEST_CASE("robust ts bounds") {
  // rho = 1 recovers the plain upper bound.
  const auto plain = ts_bounds(QueryBudget(4, 1), 100.0L);
  const auto robust = robust_ts_bounds(QueryBudget(4, 1), 100.0L, 1.0L);
  CHECK(static_cast<double>(robust.upper_cr) ==
        doctest::Approx(static_cast<double>(plain.upper_cr)).epsilon(1e-15));
  // (k=4, H=1, rho=0.75): exponent (2*0.75-1)/(U+1) = 0.5/3.
  const auto r = robust_ts_bounds(QueryBudget(4, 1), 100.0L, 0.75L);
  CHECK(static_cast<double>(r.upper_cr) ==
        doctest::Approx(std::pow(100.0, 0.5 / 3.0)).epsilon(1e-14));
  CHECK(r.L == ceil_div(pow2(4), partial_binomial_sum(3, 1)));  // printed form: S(k-H, H)
  for (long double rho : {0.6L, 0.75L, 0.9L, 1.0L}) {
    const auto rr = robust_ts_bounds(QueryBudget(6, 1), 50.0L, rho);
    CHECK(rr.upper_cr >= rr.lower_cr);
  }
  CHECK_THROWS_AS(robust_ts_bounds(QueryBudget(4, 1), 100.0L, 0.5L), std::domain_error);
}

TEST_CASE("robust bidding bounds") {
  SUBCASE("k=0, r=4 forces b=2 and value 4") {
    const auto r = robust_bidding_bounds(QueryBudget(0, 0), 4.0L);
    CHECK(static_cast<double>(r.b_opt) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(static_cast<double>(r.upper_cr) == doctest::Approx(4.0).epsilon(1e-8));
  }
  SUBCASE("r -> infinity recovers the unconstrained upper bound") {
    for (int k : {2, 4}) {
      for (int H = 0; 2 * H <= k && H <= 1; ++H) {
        const QueryBudget budget(k, H);
        const auto r = robust_bidding_bounds(budget, 1e9L);
        CHECK(static_cast<double>(r.upper_cr) ==
              doctest::Approx(static_cast<double>(bidding_upper_bound(budget))).epsilon(1e-9));
      }
    }
  }
  SUBCASE("feasible for every r >= 4; tighter r costs more") {
    for (int k : {0, 2, 4}) {
      const QueryBudget budget(k, 0);
      long double prev = -1.0L;
      for (long double r : {4.0L, 4.5L, 6.0L, 10.0L, 100.0L}) {
        const auto rb = robust_bidding_bounds(budget, r);
        CHECK(std::isfinite(static_cast<double>(rb.upper_cr)));
        if (prev > 0.0L) CHECK(rb.upper_cr <= prev * (1.0L + 1e-12L));
        prev = rb.upper_cr;
      }
    }
  }
  CHECK_THROWS_AS(robust_bidding_bounds(QueryBudget(2, 0), 3.9L), std::domain_error);
}

TEST_CASE("bound report serialization") {
  BoundReport rep;
  rep.name = "ts_upper";
  rep.value = 2.5L;
  rep.formula_inputs = {{"k", "4"}, {"H", "1"}};
  const auto j = rep.to_json();
  CHECK(j["name"] == "ts_upper");
  CHECK(j["formula_inputs"]["k"] == "4");
}
