#include "ulam/games/continuous.hpp"

#include <stdexcept>

namespace ulam {

ContinuousState::ContinuousState(QueryBudget budget) : budget_(budget), remaining_(budget.k) {
  segs_.push_back({mpq_class(0), mpq_class(1), 0});
  weight_.assign(static_cast<std::size_t>(budget.k + 1) * (budget.H + 2), 0);
  for (int q = 0; q <= budget.k; ++q) {
    for (int h = -1; h <= budget.H; ++h) {
      weight_[static_cast<std::size_t>(q) * (budget.H + 2) + (h + 1)] =
          partial_binomial_sum_clamped(q, h);
    }
  }
}

const mpz_class& ContinuousState::w(int q, int h) const {
  if (h < -1) h = -1;
  return weight_[static_cast<std::size_t>(q) * (budget_.H + 2) + (h + 1)];
}

mpq_class ContinuousState::total_weight() const {
  mpq_class total = 0;
  for (const auto& s : segs_) {
    total += mpq_class(s.hi - s.lo) * mpq_class(w(remaining_, budget_.H - s.lies));
  }
  return total;
}

ContinuousState::Branch ContinuousState::branch_weights(const mpq_class& a) const {
  const int q = remaining_ - 1;
  Branch b{mpq_class(0), mpq_class(0)};
  for (const auto& s : segs_) {
    const int h = budget_.H - s.lies;
    const mpq_class kept(w(q, h));
    const mpq_class pen(w(q, h - 1));
    // Portion at or below the threshold answers "yes" truthfully.
    mpq_class below = 0, above = 0;
    if (a >= s.hi) {
      below = s.hi - s.lo;
    } else if (a <= s.lo) {
      above = s.hi - s.lo;
    } else {
      below = a - s.lo;
      above = s.hi - a;
    }
    b.yes += below * kept + above * pen;
    b.no += below * pen + above * kept;
  }
  return b;
}

mpq_class ContinuousState::balanced_threshold() const {
  if (remaining_ <= 0) throw std::logic_error("no queries remaining");
  const int q = remaining_ - 1;
  // weight_yes(0) = sum pen, rising by (kept - pen) per unit of length; find
  // the smallest a where it reaches half the total.
  mpq_class target = 0;
  for (const auto& s : segs_) {
    const int h = budget_.H - s.lies;
    target += (s.hi - s.lo) * (mpq_class(w(q, h)) + mpq_class(w(q, h - 1)));
  }
  target /= 2;
  mpq_class acc = 0;
  for (const auto& s : segs_) {
    const int h = budget_.H - s.lies;
    acc += (s.hi - s.lo) * mpq_class(w(q, h - 1));
  }
  if (acc >= target) return mpq_class(0);
  for (const auto& s : segs_) {
    const int h = budget_.H - s.lies;
    const mpq_class slope = mpq_class(w(q, h)) - mpq_class(w(q, h - 1));
    if (slope == 0) continue;
    const mpq_class gain = (s.hi - s.lo) * slope;
    if (acc + gain >= target) {
      mpq_class a = s.lo + (target - acc) / slope;
      a.canonicalize();
      return a;
    }
    acc += gain;
  }
  return mpq_class(1);
}

void ContinuousState::apply(const mpq_class& a, bool yes) {
  if (remaining_ <= 0) throw std::logic_error("no queries remaining");
  std::vector<Segment> next;
  next.reserve(segs_.size() + 1);
  auto push = [&](mpq_class lo, mpq_class hi, int lies) {
    if (lies > budget_.H) return;  // dead
    if (hi <= lo) return;
    if (!next.empty() && next.back().hi == lo && next.back().lies == lies) {
      next.back().hi = std::move(hi);
      return;
    }
    next.push_back({std::move(lo), std::move(hi), lies});
  };
  for (auto& s : segs_) {
    // (lo, min(hi,a)] is consistent with "yes", the rest with "no".
    if (a >= s.hi) {
      push(s.lo, s.hi, s.lies + (yes ? 0 : 1));
    } else if (a <= s.lo) {
      push(s.lo, s.hi, s.lies + (yes ? 1 : 0));
    } else {
      push(s.lo, a, s.lies + (yes ? 0 : 1));
      push(a, s.hi, s.lies + (yes ? 1 : 0));
    }
  }
  segs_ = std::move(next);
  --remaining_;
}

mpq_class ContinuousState::consistent_measure() const {
  mpq_class m = 0;
  for (const auto& s : segs_) m += s.hi - s.lo;
  return m;
}

std::pair<mpq_class, mpq_class> ContinuousState::hull() const {
  if (segs_.empty()) return {mpq_class(0), mpq_class(0)};
  return {segs_.front().lo, segs_.back().hi};
}

void ContinuousSession::feed(bool response) { apply(next_threshold(), response); }

void ContinuousSession::apply(const mpq_class& a, bool response) {
  state_.apply(a, response);
  ++used_;
}

ContinuousResult continuous_search(QueryBudget budget, Responder& responder) {
  ContinuousSession session(budget);
  ContinuousResult r;
  while (!session.done()) {
    const mpq_class a = session.next_threshold();
    const bool resp = responder.answer_continuous(a);
    session.apply(a, resp);
    r.thresholds.push_back(a);
    r.responses.push_back(resp);
  }
  auto [lo, hi] = session.state().hull();
  r.hull_lo = lo;
  r.hull_hi = hi;
  r.consistent_measure = session.state().consistent_measure();
  r.queries_used = session.queries_used();
  return r;
}

bool ContinuousAdversary::answer_continuous(const mpq_class& a) {
  const auto b = state_.branch_weights(a);
  const bool yes = b.yes > b.no;  // ties answer "no"
  state_.apply(a, yes);
  return yes;
}

}  // namespace ulam
