#include "ulam/harness/verify.hpp"

#include <atomic>
#include <functional>
#include <stdexcept>

#include "ulam/games/continuous.hpp"
#include "ulam/games/discrete.hpp"
#include "ulam/games/min_cyclic.hpp"
#include "ulam/games/search_adversary.hpp"
#include "ulam/partial_sums.hpp"

namespace ulam {

VerifyScope parse_scope(const std::string& name) {
  if (name == "identify") return VerifyScope::Identify;
  if (name == "continuous") return VerifyScope::Continuous;
  if (name == "min_cyclic") return VerifyScope::MinCyclic;
  if (name == "search_adversary") return VerifyScope::SearchAdversary;
  throw std::invalid_argument("unknown verify scope: " + name);
}

namespace {

struct CaseResult {
  std::uint64_t nodes = 0;
  bool complete = true;
  std::vector<Counterexample> counterexamples;
};

nlohmann::json script_json(const std::vector<long>& thresholds, const std::vector<bool>& responses) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < responses.size(); ++i) {
    entries.push_back({{"type", "cmp"},
                       {"arg", i < thresholds.size() ? thresholds[i] : -1},
                       {"response", static_cast<bool>(responses[i])}});
  }
  return entries;
}

// ---- Identify ----

void identify_dfs(const IdentifySession& session, QueryBudget budget, long m,
                  std::vector<long>& thresholds, std::vector<bool>& responses, CaseResult& out,
                  std::uint64_t node_cap) {
  if (++out.nodes > node_cap) {
    out.complete = false;
    return;
  }
  if (session.done()) {
    if (session.ambiguous()) {
      Counterexample ce;
      ce.description = "identify ambiguous: m=" + std::to_string(m) + " k=" +
                       std::to_string(budget.k) + " H=" + std::to_string(budget.H);
      ce.transcript = {{"budget", {{"k", budget.k}, {"H", budget.H}}},
                       {"m", m},
                       {"entries", script_json(thresholds, responses)}};
      out.counterexamples.push_back(std::move(ce));
    }
    return;
  }
  const long t = session.next_threshold();
  for (bool resp : {false, true}) {
    if (!out.complete) return;
    IdentifySession next = session;
    next.apply(t, resp);
    thresholds.push_back(t);
    responses.push_back(resp);
    identify_dfs(next, budget, m, thresholds, responses, out, node_cap);
    thresholds.pop_back();
    responses.pop_back();
  }
}

CaseResult verify_identify_case(long m, QueryBudget budget, std::uint64_t node_cap) {
  CaseResult out;
  if (m == 1) return out;
  IdentifySession session(m, budget);
  std::vector<long> thresholds;
  std::vector<bool> responses;
  identify_dfs(session, budget, m, thresholds, responses, out, node_cap);
  return out;
}

// ---- Continuous ----

void continuous_dfs(const ContinuousSession& session, QueryBudget budget, const mpq_class& want,
                    std::vector<std::string>& thresholds, std::vector<bool>& responses,
                    CaseResult& out, std::uint64_t node_cap, mpq_class& worst_hull) {
  if (++out.nodes > node_cap) {
    out.complete = false;
    return;
  }
  if (session.done()) {
    const mpq_class measure = session.state().consistent_measure();
    auto [lo, hi] = session.state().hull();
    const mpq_class hull_len = hi - lo;
    if (hull_len > worst_hull) worst_hull = hull_len;
    if (measure != want) {
      Counterexample ce;
      ce.description = "continuous measure off: k=" + std::to_string(budget.k) + " H=" +
                       std::to_string(budget.H) + " got " + measure.get_str() + " want " +
                       want.get_str();
      nlohmann::json entries = nlohmann::json::array();
      for (std::size_t i = 0; i < responses.size(); ++i) {
        entries.push_back(
            {{"type", "cmp"}, {"arg", thresholds[i]}, {"response", static_cast<bool>(responses[i])}});
      }
      ce.transcript = {{"budget", {{"k", budget.k}, {"H", budget.H}}}, {"entries", entries}};
      out.counterexamples.push_back(std::move(ce));
    }
    return;
  }
  const mpq_class a = session.next_threshold();
  for (bool resp : {false, true}) {
    if (!out.complete) return;
    ContinuousSession next = session;
    next.apply(a, resp);
    thresholds.push_back(a.get_str());
    responses.push_back(resp);
    continuous_dfs(next, budget, want, thresholds, responses, out, node_cap, worst_hull);
    thresholds.pop_back();
    responses.pop_back();
  }
}

// ---- MinCyclic ----

void min_cyclic_dfs(const IdentifySession& session, const BlockPartition& part, long n,
                    QueryBudget budget, const mpz_class& guarantee,
                    std::vector<long>& thresholds, std::vector<bool>& responses, CaseResult& out,
                    std::uint64_t node_cap) {
  if (++out.nodes > node_cap) {
    out.complete = false;
    return;
  }
  if (session.done()) {
    const long j = part.end(session.result());
    for (long x = 0; x < n; ++x) {
      int lies = 0;
      for (std::size_t i = 0; i < responses.size(); ++i) {
        const bool truth = x <= thresholds[i];
        if (truth != responses[i]) ++lies;
      }
      if (lies > budget.H) continue;
      const long value = ((j - x) % n + n) % n;
      if (mpz_class(value) > guarantee) {
        Counterexample ce;
        ce.description = "min_cyclic bound broken: n=" + std::to_string(n) + " k=" +
                         std::to_string(budget.k) + " H=" + std::to_string(budget.H) + " rotation=" +
                         std::to_string(x) + " A[j]=" + std::to_string(value) + " bound=" +
                         guarantee.get_str();
        ce.transcript = {{"budget", {{"k", budget.k}, {"H", budget.H}}},
                         {"n", n},
                         {"entries", script_json(thresholds, responses)}};
        out.counterexamples.push_back(std::move(ce));
      }
    }
    return;
  }
  const long b = session.next_threshold();
  const long t = b < 0 ? -1 : part.end(b);
  for (bool resp : {false, true}) {
    if (!out.complete) return;
    IdentifySession next = session;
    next.apply(b, resp);
    thresholds.push_back(t);
    responses.push_back(resp);
    min_cyclic_dfs(next, part, n, budget, guarantee, thresholds, responses, out, node_cap);
    thresholds.pop_back();
    responses.pop_back();
  }
}

// ---- SearchAdversary ----

using SearchHistory = std::vector<std::pair<std::vector<int>, bool>>;

struct SearchQuestioner {
  std::string name;
  // Next subset query given the history; empty means stop early.
  std::function<std::vector<int>(long, QueryBudget, const SearchHistory&)> next;
  std::function<long(long, QueryBudget, const SearchHistory&)> output;
};

std::vector<int> prefix_set(long t, long n) {
  std::vector<int> s;
  for (long i = 0; i <= std::min(t, n - 1); ++i) s.push_back(static_cast<int>(i));
  return s;
}

std::vector<int> history_min_lies_order(long n, const SearchHistory& h) {
  std::vector<int> lies(n, 0);
  for (const auto& [set, resp] : h) {
    std::vector<char> in(n, 0);
    for (int i : set) in[i] = 1;
    for (long i = 0; i < n; ++i) {
      if (in[i] != resp) ++lies[i];
    }
  }
  return lies;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<SearchQuestioner> search_questioner_family() {
  std::vector<SearchQuestioner> family;

  // The module's own questioner: the weighting session over positions,
  // thresholds asked as prefix sets.
  {
    auto replay = [](long n, QueryBudget b, const SearchHistory& h) {
      IdentifySession s(n, b);
      for (const auto& [set, resp] : h) {
        s.apply(static_cast<long>(set.size()) - 1, resp);
      }
      return s;
    };
    SearchQuestioner q;
    q.name = "weighting";
    q.next = [replay](long n, QueryBudget b, const SearchHistory& h) -> std::vector<int> {
      IdentifySession s = replay(n, b, h);
      if (s.done()) return {};
      const long t = std::clamp(s.next_threshold(), 0L, n - 2);
      return prefix_set(t, n);
    };
    q.output = [replay](long n, QueryBudget b, const SearchHistory& h) {
      IdentifySession s = replay(n, b, h);
      return s.result();
    };
    family.push_back(q);
  }

  // Lie-oblivious binary search on a shrinking window.
  {
    auto window = [](long n, const SearchHistory& h) {
      long lo = 0, hi = n - 1;
      for (const auto& [set, resp] : h) {
        const long mid = lo + (hi - lo) / 2;
        if (resp) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
        if (lo > hi) lo = hi;
      }
      return std::pair<long, long>(lo, hi);
    };
    SearchQuestioner q;
    q.name = "halving";
    q.next = [window](long n, QueryBudget, const SearchHistory& h) -> std::vector<int> {
      auto [lo, hi] = window(n, h);
      if (lo >= hi) return {};
      const long mid = lo + (hi - lo) / 2;
      std::vector<int> s;
      for (long i = lo; i <= mid; ++i) s.push_back(static_cast<int>(i));
      if (static_cast<long>(s.size()) >= n) s.pop_back();
      return s;
    };
    q.output = [window](long n, QueryBudget, const SearchHistory& h) {
      return window(n, h).first;
    };
    family.push_back(q);
  }

  {
    SearchQuestioner q;
    q.name = "probe";
    q.next = [](long n, QueryBudget, const SearchHistory& h) -> std::vector<int> {
      if (n < 2) return {};
      return {static_cast<int>(h.size() % n)};
    };
    q.output = [](long n, QueryBudget, const SearchHistory& h) -> long {
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i].second) return static_cast<long>(i % n);
      }
      return 0;
    };
    family.push_back(q);
  }

  // Weight-aware alternating split of the least-lied positions.
  {
    SearchQuestioner q;
    q.name = "alternating";
    q.next = [](long n, QueryBudget b, const SearchHistory& h) -> std::vector<int> {
      if (n < 2) return {};
      const auto lies = history_min_lies_order(n, h);
      std::vector<int> order(n);
      for (long i = 0; i < n; ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int c) { return lies[a] < lies[c]; });
      std::vector<int> s;
      for (std::size_t i = 0; i < order.size(); i += 2) s.push_back(order[i]);
      std::sort(s.begin(), s.end());
      if (static_cast<long>(s.size()) >= n) s.pop_back();
      if (s.empty()) s.push_back(0);
      (void)b;
      return s;
    };
    q.output = [](long n, QueryBudget, const SearchHistory& h) -> long {
      const auto lies = history_min_lies_order(n, h);
      long best = 0;
      for (long i = 1; i < n; ++i) {
        if (lies[i] < lies[best]) best = i;
      }
      return best;
    };
    family.push_back(q);
  }

  for (std::uint64_t seed : {11ULL, 29ULL}) {
    SearchQuestioner q;
    q.name = "random_" + std::to_string(seed);
    q.next = [seed](long n, QueryBudget, const SearchHistory& h) -> std::vector<int> {
      if (n < 2) return {};
      const std::uint64_t bits = mix64(seed * 0x9e3779b97f4a7c15ULL + h.size() + 1);
      std::vector<int> s;
      for (long i = 0; i < n; ++i) {
        if ((bits >> (i % 64)) & 1) s.push_back(static_cast<int>(i));
      }
      if (s.empty()) s.push_back(static_cast<int>(bits % n));
      if (static_cast<long>(s.size()) >= n) s.pop_back();
      return s;
    };
    q.output = [](long n, QueryBudget, const SearchHistory& h) -> long {
      const auto lies = history_min_lies_order(n, h);
      long best = 0;
      for (long i = 1; i < n; ++i) {
        if (lies[i] < lies[best]) best = i;
      }
      return best;
    };
    family.push_back(q);
  }

  return family;
}

// Required witnessed rank: the printed floor(n S(k,H)/2^k), capped at the
// largest rank when k = 0.
mpz_class search_required_rank(long n, QueryBudget budget) {
  mpz_class required =
      floor_div(mpz_class(n) * partial_binomial_sum(budget.k, budget.H), pow2(budget.k));
  if (required > n - 1) required = n - 1;
  return required;
}

void check_search_witness(const SearchAdversary& adv, long n, QueryBudget budget, long output,
                          const std::string& questioner, CaseResult& out) {
  const auto w = adv.witness_for(output);
  const mpz_class required = search_required_rank(n, budget);
  std::vector<char> seen(n, 0);
  bool valid_perm = true;
  for (long r : w.ranks) {
    if (r < 0 || r >= n || seen[r]) valid_perm = false;
    if (r >= 0 && r < n) seen[r] = 1;
  }
  const bool consistent = w.lies <= budget.H;
  if (!valid_perm || !consistent || mpz_class(w.witnessed_rank) < required) {
    Counterexample ce;
    ce.description = "search witness below bound: n=" + std::to_string(n) + " k=" +
                     std::to_string(budget.k) + " H=" + std::to_string(budget.H) +
                     " questioner=" + questioner + " witnessed=" +
                     std::to_string(w.witnessed_rank) + " required=" + required.get_str() +
                     (valid_perm ? "" : " INVALID-PERM") + (consistent ? "" : " INCONSISTENT");
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : adv.entries()) {
      entries.push_back({{"type", e.type}, {"arg", e.arg}, {"response", e.response}});
    }
    ce.transcript = {{"budget", {{"k", budget.k}, {"H", budget.H}}},
                     {"n", n},
                     {"output", output},
                     {"witness_ranks", w.ranks},
                     {"entries", entries}};
    out.counterexamples.push_back(std::move(ce));
  }
}

CaseResult verify_search_case(long n, QueryBudget budget, const SearchQuestioner& q,
                              std::uint64_t node_cap) {
  CaseResult out;
  SearchAdversary adv(n, budget);
  SearchHistory h;
  for (int round = 0; round < budget.k; ++round) {
    if (++out.nodes > node_cap) {
      out.complete = false;
      return out;
    }
    auto set = q.next(n, budget, h);
    if (set.empty()) break;
    const bool resp = adv.answer_subset(set);
    h.emplace_back(std::move(set), resp);
  }
  check_search_witness(adv, n, budget, q.output(n, budget, h), q.name, out);
  return out;
}

// Exact minimax questioner for tiny cases: minimizes the achievable
// witnessed rank over all adaptive subset strategies.
long search_minimax_rank(const SearchAdversary& adv, long n, int rounds_left, CaseResult& out,
                         std::uint64_t node_cap) {
  long best = -1;
  for (long e = 0; e < n; ++e) {
    const long r = adv.witness_for(e).witnessed_rank;
    if (best < 0 || r < best) best = r;
  }
  if (rounds_left == 0 || best == 0) return best;
  const long full = (1L << n) - 1;
  for (long mask = 1; mask < full; ++mask) {
    if (++out.nodes > node_cap) {
      out.complete = false;
      return best;
    }
    std::vector<int> set;
    for (long i = 0; i < n; ++i) {
      if ((mask >> i) & 1) set.push_back(static_cast<int>(i));
    }
    SearchAdversary next = adv;
    next.answer_subset(set);
    best = std::min(best, search_minimax_rank(next, n, rounds_left - 1, out, node_cap));
    if (best == 0) break;
  }
  return best;
}

VerifyReport verify_search_adversary(const VerifyLimits& limits, ExecPolicy exec) {
  VerifyReport report;
  const auto family = search_questioner_family();
  struct Case {
    long n;
    QueryBudget budget;
    int questioner;  // -1: exact minimax
  };
  std::vector<Case> cases;
  for (long n = 1; n <= limits.max_n; ++n) {
    for (int k = 0; k <= limits.max_k; ++k) {
      for (int H = 0; 2 * H <= k && H <= limits.max_H; ++H) {
        for (std::size_t qi = 0; qi < family.size(); ++qi) {
          cases.push_back({n, QueryBudget(k, H), static_cast<int>(qi)});
        }
        if (n <= 6 && k <= 3) cases.push_back({n, QueryBudget(k, H), -1});
      }
    }
  }
  std::vector<CaseResult> results(cases.size());
  parallel_for(exec, static_cast<long>(cases.size()), [&](long i) {
    const Case& c = cases[i];
    if (c.questioner >= 0) {
      results[i] = verify_search_case(c.n, c.budget, family[c.questioner], limits.node_cap);
      return;
    }
    CaseResult out;
    SearchAdversary adv(c.n, c.budget);
    const long got = search_minimax_rank(adv, c.n, c.budget.k, out, limits.node_cap);
    const mpz_class required = search_required_rank(c.n, c.budget);
    if (mpz_class(got) < required) {
      Counterexample ce;
      ce.description = "search minimax questioner forces rank " + std::to_string(got) +
                       " < required " + required.get_str() + ": n=" + std::to_string(c.n) +
                       " k=" + std::to_string(c.budget.k) + " H=" + std::to_string(c.budget.H);
      ce.transcript = {{"budget", {{"k", c.budget.k}, {"H", c.budget.H}}},
                       {"n", c.n},
                       {"minimax_rank", got}};
      out.counterexamples.push_back(std::move(ce));
    }
    results[i] = std::move(out);
  });
  report.cases = cases.size();
  for (auto& r : results) {
    report.nodes += r.nodes;
    report.complete = report.complete && r.complete;
    for (auto& ce : r.counterexamples) report.counterexamples.push_back(std::move(ce));
  }
  return report;
}

CaseResult verify_min_cyclic_case(long n, QueryBudget budget, std::uint64_t node_cap) {
  CaseResult out;
  const BlockPartition part = min_cyclic_partition(n, budget);
  const mpz_class guarantee = min_cyclic_guarantee(n, budget);
  if (part.blocks <= 1) {
    // Vacuous regime: A[j] <= n-1 always; flag only if the printed bound
    // is below that.
    if (guarantee < n - 1) {
      // Still fine when the bound is >= the worst rank of the returned
      // index; the returned index is n-1, worst rank n-1.
      Counterexample ce;
      ce.description = "min_cyclic vacuous regime below bound: n=" + std::to_string(n) + " k=" +
                       std::to_string(budget.k) + " H=" + std::to_string(budget.H);
      ce.transcript = {{"n", n}, {"blocks", part.blocks}};
      out.counterexamples.push_back(std::move(ce));
    }
    return out;
  }
  IdentifySession session(part.blocks, budget);
  std::vector<long> thresholds;
  std::vector<bool> responses;
  min_cyclic_dfs(session, part, n, budget, guarantee, thresholds, responses, out, node_cap);
  return out;
}

}  // namespace

VerifyReport verify_exhaustive(VerifyScope scope, const VerifyLimits& limits, ExecPolicy exec) {
  VerifyReport report;
  switch (scope) {
    case VerifyScope::Identify: {
      struct Case {
        long m;
        QueryBudget budget;
      };
      std::vector<Case> cases;
      for (int k = 0; k <= limits.max_k; ++k) {
        for (int H = 0; 2 * H <= k && H <= limits.max_H; ++H) {
          const QueryBudget budget(k, H);
          const mpz_class cap = limits.capacity == CapacityRule::Sufficient
                                    ? floor_div(pow2(k - H), partial_binomial_sum(k - H, H))
                                    : mpz_class(verified_win_capacity(budget));
          for (long m = 2; mpz_class(m) <= cap; ++m) cases.push_back({m, budget});
        }
      }
      std::vector<CaseResult> results(cases.size());
      parallel_for(exec, static_cast<long>(cases.size()), [&](long i) {
        results[i] = verify_identify_case(cases[i].m, cases[i].budget, limits.node_cap);
      });
      report.cases = cases.size();
      for (auto& r : results) {
        report.nodes += r.nodes;
        report.complete = report.complete && r.complete;
        for (auto& ce : r.counterexamples) report.counterexamples.push_back(std::move(ce));
      }
      break;
    }
    case VerifyScope::Continuous: {
      std::vector<QueryBudget> cases;
      for (int k = 0; k <= limits.max_k; ++k) {
        for (int H = 0; 2 * H <= k && H <= limits.max_H; ++H) cases.emplace_back(k, H);
      }
      std::vector<CaseResult> results(cases.size());
      std::vector<mpq_class> hulls(cases.size());
      parallel_for(exec, static_cast<long>(cases.size()), [&](long i) {
        const QueryBudget budget = cases[i];
        mpq_class want(partial_binomial_sum(budget.k, budget.H), pow2(budget.k));
        want.canonicalize();
        CaseResult out;
        ContinuousSession session(budget);
        std::vector<std::string> thresholds;
        std::vector<bool> responses;
        mpq_class worst_hull(0);
        continuous_dfs(session, budget, want, thresholds, responses, out, limits.node_cap,
                       worst_hull);
        hulls[i] = worst_hull;
        results[i] = std::move(out);
      });
      report.cases = cases.size();
      nlohmann::json hull_notes = nlohmann::json::array();
      for (std::size_t i = 0; i < cases.size(); ++i) {
        report.nodes += results[i].nodes;
        report.complete = report.complete && results[i].complete;
        for (auto& ce : results[i].counterexamples) {
          report.counterexamples.push_back(std::move(ce));
        }
        const QueryBudget b = cases[i];
        mpq_class interval_bound(partial_binomial_sum(b.k - b.H, std::min(b.H, b.k - b.H)),
                                 pow2(b.k - b.H));
        interval_bound.canonicalize();
        hull_notes.push_back({{"k", b.k},
                              {"H", b.H},
                              {"worst_hull", hulls[i].get_str()},
                              {"interval_bound", interval_bound.get_str()},
                              {"hull_within_interval_bound", hulls[i] <= interval_bound}});
      }
      report.notes["continuous_hull"] = hull_notes;
      break;
    }
    case VerifyScope::MinCyclic: {
      struct Case {
        long n;
        QueryBudget budget;
      };
      std::vector<Case> cases;
      for (long n = 1; n <= limits.max_n; ++n) {
        for (int k = 0; k <= limits.max_k; ++k) {
          for (int H = 0; 2 * H <= k && H <= limits.max_H; ++H) {
            cases.push_back({n, QueryBudget(k, H)});
          }
        }
      }
      std::vector<CaseResult> results(cases.size());
      parallel_for(exec, static_cast<long>(cases.size()), [&](long i) {
        results[i] = verify_min_cyclic_case(cases[i].n, cases[i].budget, limits.node_cap);
      });
      report.cases = cases.size();
      for (auto& r : results) {
        report.nodes += r.nodes;
        report.complete = report.complete && r.complete;
        for (auto& ce : r.counterexamples) report.counterexamples.push_back(std::move(ce));
      }
      break;
    }
    case VerifyScope::SearchAdversary:
      report = verify_search_adversary(limits, exec);
      break;
  }
  return report;
}

}  // namespace ulam
