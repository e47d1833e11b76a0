#include "ulam/games/discrete.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ulam {

namespace {

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

DiscreteState::DiscreteState(long m, QueryBudget budget)
    : budget_(budget), weights_(budget.k, budget.H), remaining_(budget.k) {
  if (m < 1) throw std::domain_error("need at least one candidate");
  // Total weight m * S(k, H) must fit the uint64 accumulators.
  const mpz_class total = mpz_class(m) * partial_binomial_sum_clamped(budget.k, budget.H);
  if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62) {
    throw std::domain_error("state weight exceeds 62-bit accumulator");
  }
  lies_.assign(static_cast<std::size_t>(m), 0);
  live_count_ = m;
  first_live_ = 0;
  last_live_ = m - 1;
}

DiscreteState::Branch DiscreteState::branch_weights(long t) const {
  const int q = remaining_ - 1;
  std::uint64_t yes = 0;
  std::uint64_t no = 0;
  for (long c = first_live_; c <= last_live_; ++c) {
    const int h = budget_.H - lies_[c];
    if (h < 0) continue;
    if (c <= t) {
      yes += weights_(q, h);
      no += weights_(q, h - 1);
    } else {
      yes += weights_(q, h - 1);
      no += weights_(q, h);
    }
  }
  return {yes, no};
}

long DiscreteState::balanced_threshold() const {
  const int q = remaining_ - 1;
  // S_yes as a function of the threshold, walked left to right; the total
  // over both branches is constant (Pascal), so imbalance is |2*S_yes - W|.
  std::uint64_t total = 0;
  std::uint64_t yes = 0;
  for (long c = first_live_; c <= last_live_; ++c) {
    const int h = budget_.H - lies_[c];
    if (h < 0) continue;
    yes += weights_(q, h - 1);
    total += weights_(q, h) + weights_(q, h - 1);
  }
  long best_t = first_live_ - 1;
  std::uint64_t best = abs_diff(yes, total - yes);
  for (long t = first_live_; t <= last_live_; ++t) {
    const int h = budget_.H - lies_[t];
    if (h >= 0) {
      yes += weights_(q, h) - weights_(q, h - 1);
    }
    const std::uint64_t d = abs_diff(yes, total - yes);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  return best_t;
}

void DiscreteState::apply(long t, bool yes) {
  if (remaining_ <= 0) throw std::logic_error("no queries remaining");
  if (yes) {
    for (long c = std::max(t + 1, first_live_); c <= last_live_; ++c) ++lies_[c];
  } else {
    for (long c = first_live_; c <= std::min(t, last_live_); ++c) ++lies_[c];
  }
  --remaining_;
  live_count_ = 0;
  long first = -1, last = -1;
  for (long c = first_live_; c <= last_live_; ++c) {
    if (lies_[c] <= budget_.H) {
      ++live_count_;
      if (first < 0) first = c;
      last = c;
    }
  }
  first_live_ = first < 0 ? 0 : first;
  last_live_ = last < 0 ? -1 : last;
  if (live_count_ == 0) last_live_ = -1;
}

std::uint64_t DiscreteState::total_weight() const {
  std::uint64_t w = 0;
  for (long c = first_live_; c <= last_live_; ++c) {
    const int h = budget_.H - lies_[c];
    if (h >= 0) w += weights_(remaining_, h);
  }
  return w;
}

IdentifySession::IdentifySession(long m, QueryBudget budget) : state_(m, budget) {}

bool IdentifySession::done() const {
  return state_.live_count() <= 1 || used_ >= state_.budget().k;
}

long IdentifySession::next_threshold() const { return state_.balanced_threshold(); }

void IdentifySession::feed(bool response) { apply(next_threshold(), response); }

void IdentifySession::apply(long t, bool response) {
  state_.apply(t, response);
  ++used_;
}

long IdentifySession::result() const {
  if (state_.live_count() >= 1) return state_.first_live();
  long best = 0;
  int best_lies = std::numeric_limits<int>::max();
  for (long c = 0; c < state_.size(); ++c) {
    if (state_.lies(c) < best_lies) {
      best_lies = state_.lies(c);
      best = c;
    }
  }
  return best;
}

bool IdentifySession::ambiguous() const { return state_.live_count() > 1; }

bool IdentifySession::tolerance_exceeded() const { return state_.live_count() == 0; }

namespace {

GameResult play_identify(long m, QueryBudget budget, Responder& responder) {
  GameResult r;
  if (m == 1) {
    r.value = 0;
    return r;
  }
  IdentifySession session(m, budget);
  while (!session.done()) {
    const long t = session.next_threshold();
    const bool resp = responder.answer_comparison(t);
    session.apply(t, resp);
    r.thresholds.push_back(t);
    r.responses.push_back(resp);
  }
  r.value = session.result();
  r.ambiguous = session.ambiguous();
  r.tolerance_exceeded = session.tolerance_exceeded();
  r.queries_used = session.queries_used();
  return r;
}

}  // namespace

GameResult identify(long m, QueryBudget budget, Responder& responder) {
  if (m < 1) throw std::domain_error("need at least one candidate");
  const mpz_class lhs = pow2(budget.k - budget.H);
  const mpz_class rhs =
      mpz_class(m) * partial_binomial_sum(budget.k - budget.H, std::min(budget.H, budget.k - budget.H));
  if (lhs < rhs) throw std::domain_error("budget insufficient");
  return play_identify(m, budget, responder);
}

GameResult find_value(long m, QueryBudget budget, Responder& responder) {
  if (m < 1) throw std::domain_error("need at least one candidate");
  if (mpz_class(m) > mu_bounds(budget).lower) throw std::domain_error("budget insufficient");
  return play_identify(m, budget, responder);
}

mpz_class weighting_capacity(const QueryBudget& budget) {
  return floor_div(pow2(budget.k), partial_binomial_sum(budget.k, budget.H));
}

namespace {

bool wins_dfs(const IdentifySession& session) {
  if (session.done()) return !session.ambiguous();
  const long t = session.next_threshold();
  for (bool resp : {false, true}) {
    IdentifySession next = session;
    next.apply(t, resp);
    if (!wins_dfs(next)) return false;
  }
  return true;
}

}  // namespace

bool session_wins_everywhere(long m, QueryBudget budget) {
  if (m <= 1) return true;
  return wins_dfs(IdentifySession(m, budget));
}

long verified_win_capacity(const QueryBudget& budget) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, long> cache;
  {
    std::scoped_lock lock(mu);
    const auto it = cache.find({budget.k, budget.H});
    if (it != cache.end()) return it->second;
  }
  const long k = budget.k, H = budget.H;
  const mpz_class floor_cap =
      floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min(H, k - H)));
  long result;
  if (k > 13) {
    // Traversal too large; stay on the printed sufficiency bound.
    const mpz_class clamp = mpz_class(1) << 40;
    result = (floor_cap > clamp ? clamp : floor_cap).get_si();
  } else {
    result = std::max(1L, floor_cap.get_si());
    const long sphere = weighting_capacity(budget).get_si();
    for (long m = sphere; m > result; --m) {
      if (session_wins_everywhere(m, budget)) {
        result = m;
        break;
      }
    }
  }
  std::scoped_lock lock(mu);
  cache[{budget.k, budget.H}] = result;
  return result;
}

}  // namespace ulam
