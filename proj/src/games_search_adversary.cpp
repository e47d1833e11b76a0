#include "ulam/games/search_adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace ulam {

SearchAdversary::SearchAdversary(long n, QueryBudget budget)
    : budget_(budget), weights_(budget.k, budget.H) {
  if (n < 1) throw std::domain_error("need at least one position");
  const mpz_class total = mpz_class(n) * partial_binomial_sum_clamped(budget.k, budget.H);
  if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62) {
    throw std::domain_error("state weight exceeds 62-bit accumulator");
  }
  lies_.assign(static_cast<std::size_t>(n), 0);
}

bool SearchAdversary::answer_subset(const std::vector<int>& member_set) {
  if (answered_ >= budget_.k) throw std::logic_error("query budget exhausted");
  const int q = budget_.k - answered_ - 1;
  std::vector<char> in_set(lies_.size(), 0);
  for (int i : member_set) {
    if (i < 0 || i >= static_cast<int>(lies_.size())) {
      throw std::domain_error("member outside position range");
    }
    in_set[i] = 1;
  }
  std::uint64_t yes = 0, no = 0;
  for (std::size_t i = 0; i < lies_.size(); ++i) {
    const int h = budget_.H - lies_[i];
    if (h < 0) continue;
    if (in_set[i]) {
      yes += weights_(q, h);
      no += weights_(q, h - 1);
    } else {
      yes += weights_(q, h - 1);
      no += weights_(q, h);
    }
  }
  const bool resp = yes > no;  // ties answer "no"
  for (std::size_t i = 0; i < lies_.size(); ++i) {
    if (in_set[i] != resp) ++lies_[i];
  }
  ++answered_;
  TranscriptEntry e;
  e.type = "subset";
  e.arg = member_set;
  e.response = resp;
  entries_.push_back(std::move(e));
  return resp;
}

std::vector<long> SearchAdversary::consistent_positions() const {
  std::vector<long> out;
  for (std::size_t i = 0; i < lies_.size(); ++i) {
    if (lies_[i] <= budget_.H) out.push_back(static_cast<long>(i));
  }
  return out;
}

long SearchAdversary::consistent_count() const {
  long c = 0;
  for (auto l : lies_) {
    if (l <= budget_.H) ++c;
  }
  return c;
}

SearchAdversary::Witness SearchAdversary::witness_for(long output_index) const {
  const long n = this->n();
  if (output_index < 0 || output_index >= n) throw std::domain_error("output index out of range");
  const auto consistent = consistent_positions();
  if (consistent.empty()) throw std::logic_error("adversary state has no consistent position");
  Witness w;
  // Put the minimum at a consistent position other than the output when one
  // exists, which frees the output to take the largest rank.
  long min_pos = -1;
  for (long c : consistent) {
    if (c != output_index) {
      min_pos = c;
      break;
    }
  }
  w.ranks.assign(n, 0);
  if (min_pos < 0) {
    // Forced: the output is the only consistent minimum position.
    min_pos = output_index;
    long r = 0;
    for (long i = 0; i < n; ++i) {
      w.ranks[(min_pos + i) % n] = r++;
    }
  } else {
    w.ranks[min_pos] = 0;
    w.ranks[output_index] = n - 1;
    long r = 1;
    for (long i = 1; i < n; ++i) {
      const long pos = (min_pos + i) % n;
      if (pos == output_index || pos == min_pos) continue;
      w.ranks[pos] = r++;
    }
  }
  w.min_position = min_pos;
  w.witnessed_rank = w.ranks[output_index];
  w.lies = count_witness_lies(entries_, min_pos);
  return w;
}

mpz_class SearchAdversary::floor_bound() const {
  return floor_div(mpz_class(n()) * partial_binomial_sum(budget_.k, budget_.H), pow2(budget_.k));
}

int count_witness_lies(const std::vector<TranscriptEntry>& entries, long min_position) {
  int lies = 0;
  for (const auto& e : entries) {
    bool truth = false;
    for (const auto& v : e.arg) {
      if (v.get<long>() == min_position) {
        truth = true;
        break;
      }
    }
    if (truth != e.response) ++lies;
  }
  return lies;
}

}  // namespace ulam
