#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "ulam/games/continuous.hpp"
#include "ulam/games/discrete.hpp"
#include "ulam/games/min_cyclic.hpp"
#include "ulam/games/search_adversary.hpp"

using namespace ulam;

namespace {

// Truthful comparison responder for a fixed hidden candidate.
class TruthfulComparison : public Responder {
 public:
  explicit TruthfulComparison(long x) : x_(x) {}
  bool answer_comparison(long t) override { return x_ <= t; }

 private:
  long x_;
};

class TruthfulContinuous : public Responder {
 public:
  explicit TruthfulContinuous(mpq_class x) : x_(std::move(x)) {}
  bool answer_continuous(const mpq_class& a) override { return x_ <= a; }

 private:
  mpq_class x_;
};

// Enumerates every response string against a session-driven game and calls
// the leaf check.
template <typename Session, typename Leaf>
void for_all_responses(Session session, std::vector<bool>& script, Leaf&& leaf) {
  if (session.done()) {
    leaf(session, script);
    return;
  }
  for (bool resp : {false, true}) {
    Session next = session;
    next.feed(resp);
    script.push_back(resp);
    for_all_responses(next, script, leaf);
    script.pop_back();
  }
}

}  // namespace

TEST_CASE("identify: one truthful binary question") {
  for (long x = 0; x < 2; ++x) {
    TruthfulComparison oracle(x);
    const auto r = identify(2, QueryBudget(1, 0), oracle);
    CHECK(r.value == x);
    CHECK(!r.ambiguous);
    CHECK(r.queries_used == 1);
  }
}

TEST_CASE("identify: refuses when the budget is insufficient") {
  TruthfulComparison oracle(0);
  // 2^3 = 8 < 5 * S(3,1) = 20
  CHECK_THROWS_WITH_AS(identify(5, QueryBudget(4, 1), oracle), "budget insufficient",
                       std::domain_error);
}

TEST_CASE("identify: m=2, k=4, H=1 beats every responder with at most one lie") {
  const QueryBudget budget(4, 1);
  IdentifySession root(2, budget);
  std::vector<bool> script;
  for_all_responses(root, script, [&](const IdentifySession& leaf, const std::vector<bool>&) {
    CHECK(!leaf.ambiguous());
  });
}

TEST_CASE("find: pinned entry points") {
  TruthfulComparison oracle(3);
  const QueryBudget budget(6, 1);
  // mu_bounds(6,1).lower = 5
  const auto r = find_value(5, budget, oracle);
  CHECK(r.value == 3);
  CHECK_THROWS_AS(find_value(10, budget, oracle), std::domain_error);  // above the ceiling

  TruthfulComparison trivial(0);
  const auto one = find_value(1, QueryBudget(0, 0), trivial);
  CHECK(one.value == 0);
  CHECK(one.queries_used == 0);
}

TEST_CASE("continuous: truthful binary search hits measure S(k,H)/2^k") {
  TruthfulContinuous oracle(mpq_class(3, 7));
  const auto r = continuous_search(QueryBudget(3, 0), oracle);
  CHECK(r.consistent_measure == mpq_class(1, 8));
  CHECK(r.hull_lo < mpq_class(3, 7));
  CHECK(r.hull_hi >= mpq_class(3, 7));
}

TEST_CASE("continuous: measure is exactly S(k,H)/2^k for every response string") {
  for (int k = 0; k <= 8; ++k) {
    for (int H = 0; 2 * H <= k && H <= 2; ++H) {
      mpq_class want(partial_binomial_sum(k, H), pow2(k));
      want.canonicalize();
      ContinuousSession root((QueryBudget(k, H)));
      std::vector<bool> script;
      for_all_responses(root, script,
                        [&](const ContinuousSession& leaf, const std::vector<bool>&) {
                          CHECK(leaf.state().consistent_measure() == want);
                        });
    }
  }
}

TEST_CASE("continuous: pinned measures 5/16 and 22/64") {
  ContinuousAdversary adv((QueryBudget(4, 1)));
  const auto r = continuous_search(QueryBudget(4, 1), adv);
  CHECK(r.consistent_measure == mpq_class(5, 16));

  ContinuousAdversary adv2((QueryBudget(6, 2)));
  const auto r2 = continuous_search(QueryBudget(6, 2), adv2);
  CHECK(r2.consistent_measure == mpq_class(11, 32));
}

TEST_CASE("continuous adversary: keeps at least half the weight vs any questioner") {
  struct NaiveQuestioner {
    mpq_class threshold;
  };
  for (int k = 1; k <= 6; ++k) {
    for (int H = 0; 2 * H <= k && H <= 2; ++H) {
      mpq_class bound(partial_binomial_sum(k, H), pow2(k));
      bound.canonicalize();
      // Unbalanced questioner: always asks 1/2.
      ContinuousAdversary adv((QueryBudget(k, H)));
      for (int i = 0; i < k; ++i) adv.answer_continuous(mpq_class(1, 2));
      CHECK(adv.state().consistent_measure() >= bound);
      // The weighting questioner meets it exactly.
      ContinuousAdversary adv2((QueryBudget(k, H)));
      const auto r = continuous_search(QueryBudget(k, H), adv2);
      CHECK(r.consistent_measure == bound);
    }
  }
  // Strictness for the naive questioner at k=4, H=1.
  ContinuousAdversary adv((QueryBudget(4, 1)));
  for (int i = 0; i < 4; ++i) adv.answer_continuous(mpq_class(1, 2));
  CHECK(adv.state().consistent_measure() > mpq_class(5, 16));
}

TEST_CASE("min_cyclic: pinned guarantees") {
  SUBCASE("n=16 k=4 H=0 identifies exactly") {
    for (long x = 0; x < 16; ++x) {
      TruthfulComparison oracle(x);
      const auto r = min_cyclic(16, QueryBudget(4, 0), oracle);
      CHECK(((r.index - x) % 16 + 16) % 16 == 0);
    }
  }
  SUBCASE("n=16 k=6 H=1 bound is 3") {
    CHECK(min_cyclic_guarantee(16, QueryBudget(6, 1)) == 3);
  }
  SUBCASE("n=10 k=4 H=1 bound is 5") {
    CHECK(min_cyclic_guarantee(10, QueryBudget(4, 1)) == 5);
  }
}

TEST_CASE("min_cyclic: guarantee holds for all rotations and response strings, small grid") {
  for (long n : {5L, 10L, 16L}) {
    for (int k : {4, 6}) {
      for (int H = 0; 2 * H <= k && H <= 1; ++H) {
        const QueryBudget budget(k, H);
        const mpz_class bound = min_cyclic_guarantee(n, budget);
        const long blocks = min_cyclic_blocks(n, budget);
        if (blocks <= 1) continue;
        const BlockPartition part = min_cyclic_partition(n, budget);
        std::function<void(IdentifySession, std::vector<std::pair<long, bool>>&)> dfs =
            [&](IdentifySession s, std::vector<std::pair<long, bool>>& hist) {
              if (s.done()) {
                const long j = part.end(s.result());
                for (long x = 0; x < n; ++x) {
                  int lies = 0;
                  for (const auto& [t, resp] : hist) {
                    if ((x <= t) != resp) ++lies;
                  }
                  if (lies > H) continue;
                  CHECK(mpz_class(((j - x) % n + n) % n) <= bound);
                }
                return;
              }
              const long b = s.next_threshold();
              const long t = b < 0 ? -1 : part.end(b);
              for (bool resp : {false, true}) {
                IdentifySession next = s;
                next.apply(b, resp);
                hist.emplace_back(t, resp);
                dfs(next, hist);
                hist.pop_back();
              }
            };
        std::vector<std::pair<long, bool>> hist;
        dfs(IdentifySession(blocks, budget), hist);
      }
    }
  }
}

TEST_CASE("search adversary: witness is a consistent permutation") {
  const QueryBudget budget(4, 1);
  SearchAdversary adv(12, budget);
  adv.answer_subset({0, 1, 2});
  adv.answer_subset({3, 4, 5, 6});
  adv.answer_subset({0, 7, 8});
  adv.answer_subset({1, 2, 9, 10, 11});
  for (long e = 0; e < 12; ++e) {
    const auto w = adv.witness_for(e);
    CHECK(w.lies <= 1);
    std::vector<char> seen(12, 0);
    for (long r : w.ranks) {
      CHECK(r >= 0);
      CHECK(r < 12);
      CHECK(!seen[r]);
      seen[r] = 1;
    }
    CHECK(w.ranks[w.min_position] == 0);
    CHECK(w.witnessed_rank == w.ranks[e]);
  }
}

TEST_CASE("search adversary: no queries leaves every output at the top rank") {
  SearchAdversary adv(9, QueryBudget(0, 0));
  for (long e = 0; e < 9; ++e) {
    CHECK(adv.witness_for(e).witnessed_rank == 8);
  }
}

TEST_CASE("search adversary: consistent count never drops below the weight floor") {
  const QueryBudget budget(4, 1);
  SearchAdversary adv(16, budget);
  adv.answer_subset({0, 1, 2, 3, 4, 5, 6, 7});
  adv.answer_subset({0, 1, 2, 3, 8, 9, 10, 11});
  adv.answer_subset({0, 1, 4, 5, 8, 9, 12, 13});
  adv.answer_subset({0, 2, 4, 6, 8, 10, 12, 14});
  // ceil(16 * S(4,1) / 16) = 5 survivors at least
  CHECK(adv.consistent_count() >= 5);
  CHECK(adv.floor_bound() == 5);
}

TEST_CASE("dead candidates never re-enter") {
  const QueryBudget budget(4, 0);
  DiscreteState st(4, budget);
  st.apply(1, true);  // candidates 2,3 lied once -> dead at H=0
  CHECK(st.live_count() == 2);
  st.apply(0, false);  // candidate 0 dies
  CHECK(st.live_count() == 1);
  CHECK(st.is_live(1));
  st.apply(1, true);
  CHECK(st.live_count() == 1);  // nothing above threshold is alive to return
}
