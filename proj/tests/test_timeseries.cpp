#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ulam/problems/timeseries.hpp"

using namespace ulam;

TEST_CASE("no-advice run reduces to the sqrt(Mm) reservation") {
  const QueryBudget budget(0, 0);
  const auto grid = ts_reservation_grid(budget, 1.0L, 100.0L);
  CHECK(grid.size == 1);
  CHECK(static_cast<double>(grid.price(1)) == doctest::Approx(10.0).epsilon(1e-15));

  // Worst case: a price just under the reservation, then the floor.
  PriceInstance inst;
  inst.m = 1.0L;
  inst.M = 100.0L;
  inst.prices = {10.0L * (1.0L - 1e-10L), 1.0L};
  const auto r = ts_run(inst, budget, truth_policy());
  CHECK(static_cast<double>(r.ratio) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(r.ratio <= std::sqrt(100.0L));
}

TEST_CASE("single-price sequences are served at ratio 1") {
  PriceInstance inst;
  inst.m = 2.0L;
  inst.M = 50.0L;
  inst.prices = {7.0L};
  for (int k : {0, 4}) {
    const auto r = ts_run(inst, QueryBudget(k, 0), truth_policy());
    CHECK(static_cast<double>(r.ratio) == doctest::Approx(1.0));
  }
}

TEST_CASE("adversarial family shape") {
  const QueryBudget budget(4, 1);  // L = ceil(16/5) = 4
  const auto family = ts_adversarial_instances(budget, 1.0L, 100.0L);
  CHECK(family.size() == 5);  // i = 1..L+1
  const long double rp = std::pow(100.0L, 0.2L);
  SUBCASE("sigma_1 = (m, a_1, m)") {
    CHECK(family[0].prices.size() == 3);
    CHECK(static_cast<double>(family[0].prices[1]) ==
          doctest::Approx(static_cast<double>(rp)).epsilon(1e-12));
    CHECK(family[0].prices[0] == 1.0L);
    CHECK(family[0].prices[2] == 1.0L);
  }
  SUBCASE("last sequence tops out at M") {
    const auto& last = family.back();
    CHECK(static_cast<double>(last.prices[last.prices.size() - 2]) ==
          doctest::Approx(100.0).epsilon(1e-15));
  }
  SUBCASE("every price lies in [m, M] and sigma_i prefixes sigma_{i+1}") {
    for (std::size_t i = 0; i < family.size(); ++i) {
      family[i].validate();
      if (i + 1 < family.size()) {
        for (std::size_t j = 0; j + 1 < family[i].prices.size(); ++j) {
          CHECK(family[i].prices[j] == family[i + 1].prices[j]);
        }
      }
    }
  }
}

TEST_CASE("truthful advice keeps every adversarial sequence within the bound") {
  for (int k : {4, 6}) {
    for (int H = 0; 2 * H <= k && H <= 1; ++H) {
      const QueryBudget budget(k, H);
      const auto bound = ts_bounds(budget, 100.0L).upper_cr;
      for (const auto& inst : ts_adversarial_instances(budget, 1.0L, 100.0L)) {
        const auto r = ts_run(inst, budget, truth_policy());
        CHECK(r.ratio <= bound * (1.0L + 1e-12L));
      }
    }
  }
}

TEST_CASE("k=4 H=1: every one-lie pattern stays within 100^(1/3)") {
  const QueryBudget budget(4, 1);
  const long double bound = std::pow(100.0L, 1.0L / 3.0L);
  for (const auto& inst : ts_adversarial_instances(budget, 1.0L, 100.0L)) {
    for (const auto& flips : flip_patterns(budget.k, budget.H)) {
      ErrorPolicy policy;
      policy.kind = PolicyKind::Fixed;
      policy.fixed_positions = flips;
      const auto r = ts_run(inst, budget, policy);
      CHECK(r.error.eta <= 1);
      CHECK(r.ratio <= bound + 1e-9L);
    }
  }
}

TEST_CASE("robust band and run") {
  const long double m = 1.0L, M = 100.0L, rho = 0.75L;
  const auto band = ts_robust_band(m, M, rho);
  CHECK(static_cast<double>(band.p2 / band.p1) ==
        doctest::Approx(std::pow(100.0, 2 * 0.75 - 1.0)).epsilon(1e-12));

  SUBCASE("rho = 1 matches the plain grid") {
    const auto b1 = ts_robust_band(m, M, 1.0L);
    CHECK(static_cast<double>(b1.p1) == doctest::Approx(1.0));
    CHECK(static_cast<double>(b1.p2) == doctest::Approx(100.0));
  }

  SUBCASE("adversarial advice never pushes the ratio past (M/m)^rho") {
    const QueryBudget budget(4, 1);
    const long double cap = std::pow(M / m, rho);
    for (const auto& inst : ts_adversarial_instances(budget, m, M)) {
      for (const auto& flips : flip_patterns(budget.k, budget.k)) {  // any error count
        ErrorPolicy policy;
        policy.kind = PolicyKind::Fixed;
        policy.fixed_positions = flips;
        const auto r = ts_robust_run(inst, budget, policy, rho);
        CHECK(r.ratio <= cap * (1.0L + 1e-12L));
      }
    }
  }

  SUBCASE("eta <= H keeps the improved consistency bound on in-band sequences") {
    const QueryBudget budget(4, 1);
    const auto bounds = robust_ts_bounds(budget, M / m, rho);
    // In-band family: peaks between p1 and p2.
    const auto grid_band = ts_robust_band(m, M, rho);
    const long double r_rob = std::pow(grid_band.p2 / grid_band.p1, 1.0L / 3.0L);
    for (int i = 1; i <= 3; ++i) {
      PriceInstance inst;
      inst.m = m;
      inst.M = M;
      inst.id = "band_" + std::to_string(i);
      inst.prices = {m};
      for (int j = 1; j <= i; ++j) {
        inst.prices.push_back(grid_band.p1 * std::pow(r_rob, static_cast<long double>(j)) *
                              (1.0L - 1e-9L));
      }
      inst.prices.push_back(m);
      for (const auto& flips : flip_patterns(budget.k, budget.H)) {
        ErrorPolicy policy;
        policy.kind = PolicyKind::Fixed;
        policy.fixed_positions = flips;
        const auto r = ts_robust_run(inst, budget, policy, rho);
        CHECK(r.ratio <= bounds.upper_cr * (1.0L + 1e-9L));
      }
    }
  }
}

TEST_CASE("instance validation") {
  PriceInstance bad;
  bad.m = 1.0L;
  bad.M = 10.0L;
  bad.prices = {11.0L};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad.prices = {};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
