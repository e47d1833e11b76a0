#include "ulam/advice.hpp"

#include <algorithm>
#include <stdexcept>

#include "ulam/games/continuous.hpp"
#include "ulam/games/discrete.hpp"
#include "ulam/games/min_cyclic.hpp"
#include "ulam/partial_sums.hpp"

namespace ulam {

namespace {

// splitmix64: stable across platforms, unlike <random> distributions.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace

ErrorPolicy ErrorPolicy::parse(const std::string& text) {
  ErrorPolicy p;
  if (text == "none") {
    p.kind = PolicyKind::None;
    return p;
  }
  if (text == "greedy") {
    p.kind = PolicyKind::Greedy;
    return p;
  }
  if (text == "minimax") {
    p.kind = PolicyKind::Minimax;
    return p;
  }
  if (text.rfind("fixed:", 0) == 0) {
    p.kind = PolicyKind::Fixed;
    const std::string body = text.substr(6);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw std::invalid_argument("fixed policy expects fixed:[i,...]");
    }
    std::string inner = body.substr(1, body.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      std::size_t next = inner.find(',', pos);
      if (next == std::string::npos) next = inner.size();
      p.fixed_positions.push_back(std::stoi(inner.substr(pos, next - pos)));
      pos = next + 1;
    }
    return p;
  }
  if (text.rfind("random:", 0) == 0) {
    p.kind = PolicyKind::Random;
    const std::string body = text.substr(7);
    const std::string eta_key = "eta=";
    const std::string seed_key = "seed=";
    const auto comma = body.find(',');
    if (body.rfind(eta_key, 0) != 0 || comma == std::string::npos ||
        body.compare(comma + 1, seed_key.size(), seed_key) != 0) {
      throw std::invalid_argument("random policy expects random:eta=E,seed=S");
    }
    p.eta = std::stoi(body.substr(eta_key.size(), comma - eta_key.size()));
    p.seed = std::stoull(body.substr(comma + 1 + seed_key.size()));
    return p;
  }
  throw std::invalid_argument("unknown error policy: " + text);
}

std::string ErrorPolicy::to_string() const {
  switch (kind) {
    case PolicyKind::None:
      return "none";
    case PolicyKind::Greedy:
      return "greedy";
    case PolicyKind::Minimax:
      return "minimax";
    case PolicyKind::Fixed: {
      std::string s = "fixed:[";
      for (std::size_t i = 0; i < fixed_positions.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(fixed_positions[i]);
      }
      return s + "]";
    }
    case PolicyKind::Random:
      return "random:eta=" + std::to_string(eta) + ",seed=" + std::to_string(seed);
  }
  return "none";
}

ErrorPolicy truth_policy() { return ErrorPolicy{}; }

std::vector<int> draw_lie_positions(int k, int eta, std::uint64_t seed) {
  if (eta > k) throw std::domain_error("cannot place more lies than queries");
  std::vector<int> pool(k);
  for (int i = 0; i < k; ++i) pool[i] = i;
  SplitMix64 rng{seed};
  std::vector<int> out;
  out.reserve(eta);
  for (int i = 0; i < eta; ++i) {
    const auto j = rng.below(pool.size() - i) + i;
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> flip_patterns(int k, int H) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    out.push_back(cur);
    if (left == 0) return;
    for (int i = start; i < k; ++i) {
      cur.push_back(i);
      rec(i + 1, left - 1);
      cur.pop_back();
    }
  };
  rec(0, H);
  // The empty pattern is emitted once per recursion root; dedupe.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinimaxOutcome worst_case_flips(int k, int H,
                                const std::function<double(const std::vector<int>&)>& play) {
  MinimaxOutcome best;
  bool first = true;
  for (const auto& pattern : flip_patterns(k, H)) {
    const double s = play(pattern);
    if (first || s > best.score) {
      best.flips = pattern;
      best.score = s;
      first = false;
    }
  }
  return best;
}

namespace {

class DiscreteShadow : public WeightShadow {
 public:
  DiscreteShadow(long m, QueryBudget b) : state_(m, b) {}
  bool response_keeps_larger_half(const TranscriptEntry& query, bool response) override {
    const auto br = state_.branch_weights(query.arg.get<long>());
    return response ? br.yes >= br.no : br.no >= br.yes;
  }
  void apply(const TranscriptEntry& query, bool response) override {
    state_.apply(query.arg.get<long>(), response);
  }

 private:
  DiscreteState state_;
};

class BlockShadow : public WeightShadow {
 public:
  BlockShadow(std::vector<long> ends, QueryBudget b)
      : ends_(std::move(ends)), state_(static_cast<long>(ends_.size()), b) {}
  bool response_keeps_larger_half(const TranscriptEntry& query, bool response) override {
    const auto br = state_.branch_weights(to_block(query.arg.get<long>()));
    return response ? br.yes >= br.no : br.no >= br.yes;
  }
  void apply(const TranscriptEntry& query, bool response) override {
    state_.apply(to_block(query.arg.get<long>()), response);
  }

 private:
  long to_block(long t) const {
    // Thresholds arrive as block end indices; map back to block id.
    const auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end() || *it != t) return -1;
    return static_cast<long>(it - ends_.begin());
  }
  std::vector<long> ends_;
  DiscreteState state_;
};

class ContinuousShadow : public WeightShadow {
 public:
  explicit ContinuousShadow(QueryBudget b) : state_(b) {}
  bool response_keeps_larger_half(const TranscriptEntry& query, bool response) override {
    const auto br = state_.branch_weights(mpq_class(query.arg.get<std::string>()));
    return response ? br.yes >= br.no : br.no >= br.yes;
  }
  void apply(const TranscriptEntry& query, bool response) override {
    state_.apply(mpq_class(query.arg.get<std::string>()), response);
  }

 private:
  ContinuousState state_;
};

class SubsetShadow : public WeightShadow {
 public:
  SubsetShadow(long n, QueryBudget b) : n_(n), budget_(b), weights_(b.k, b.H) {
    lies_.assign(n, 0);
  }
  bool response_keeps_larger_half(const TranscriptEntry& query, bool response) override {
    const auto [yes, no] = branch(query);
    return response ? yes >= no : no >= yes;
  }
  void apply(const TranscriptEntry& query, bool response) override {
    std::vector<char> in_set(n_, 0);
    for (const auto& v : query.arg) in_set[v.get<long>()] = 1;
    for (long i = 0; i < n_; ++i) {
      if (in_set[i] != response) ++lies_[i];
    }
    ++used_;
  }

 private:
  std::pair<std::uint64_t, std::uint64_t> branch(const TranscriptEntry& query) const {
    std::vector<char> in_set(n_, 0);
    for (const auto& v : query.arg) in_set[v.get<long>()] = 1;
    const int q = budget_.k - used_ - 1;
    std::uint64_t yes = 0, no = 0;
    for (long i = 0; i < n_; ++i) {
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
    return {yes, no};
  }
  long n_;
  QueryBudget budget_;
  WeightTable weights_;
  std::vector<std::int16_t> lies_;
  int used_ = 0;
};

}  // namespace

std::unique_ptr<WeightShadow> make_discrete_shadow(long m, QueryBudget budget) {
  return std::make_unique<DiscreteShadow>(m, budget);
}

std::unique_ptr<WeightShadow> make_continuous_shadow(QueryBudget budget) {
  return std::make_unique<ContinuousShadow>(budget);
}

std::unique_ptr<WeightShadow> make_block_shadow(std::vector<long> block_ends, QueryBudget budget) {
  return std::make_unique<BlockShadow>(std::move(block_ends), budget);
}

std::unique_ptr<WeightShadow> make_subset_shadow(long n, QueryBudget budget) {
  return std::make_unique<SubsetShadow>(n, budget);
}

AdviceOracle::AdviceOracle(TruthFunctions truth, QueryBudget budget, ErrorPolicy policy,
                           std::unique_ptr<WeightShadow> shadow)
    : truth_(std::move(truth)), budget_(budget), policy_(std::move(policy)), shadow_(std::move(shadow)) {
  transcript_.budget = budget;
  switch (policy_.kind) {
    case PolicyKind::Fixed:
      planned_flips_ = policy_.fixed_positions;
      for (int i : planned_flips_) {
        if (i < 0 || i >= budget.k) throw std::domain_error("fixed flip position out of range");
      }
      break;
    case PolicyKind::Random:
      planned_flips_ = draw_lie_positions(budget.k, policy_.eta, policy_.seed);
      break;
    case PolicyKind::Minimax:
      throw std::invalid_argument("minimax policy must be resolved with worst_case_flips");
    case PolicyKind::Greedy:
      if (!shadow_) throw std::invalid_argument("greedy policy needs a weight shadow");
      break;
    case PolicyKind::None:
      break;
  }
}

bool AdviceOracle::should_flip(const TranscriptEntry& query, bool truth) const {
  const int pos = static_cast<int>(transcript_.entries.size());
  switch (policy_.kind) {
    case PolicyKind::None:
      return false;
    case PolicyKind::Fixed:
    case PolicyKind::Random:
      return std::find(planned_flips_.begin(), planned_flips_.end(), pos) != planned_flips_.end();
    case PolicyKind::Greedy: {
      if (lies_told() >= budget_.H) return false;  // budget exhausted: honest
      return !shadow_->response_keeps_larger_half(query, truth);
    }
    case PolicyKind::Minimax:
      return false;
  }
  return false;
}

bool AdviceOracle::respond(const TranscriptEntry& query, bool truth) {
  const bool flip = should_flip(query, truth);
  const bool resp = flip ? !truth : truth;
  const int pos = static_cast<int>(transcript_.entries.size());
  TranscriptEntry recorded = query;
  recorded.response = resp;
  transcript_.entries.push_back(recorded);
  if (flip) {
    lie_positions_.push_back(pos);
    transcript_.lie_positions.push_back(pos);
  }
  if (lies_told() > budget_.H) transcript_.exceeded_tolerance = true;
  if (shadow_) shadow_->apply(query, resp);
  return resp;
}

bool AdviceOracle::answer_comparison(long threshold) {
  if (!truth_.comparison) throw std::logic_error("oracle has no comparison truth");
  TranscriptEntry q;
  q.type = "cmp";
  q.arg = threshold;
  return respond(q, truth_.comparison(threshold));
}

bool AdviceOracle::answer_continuous(const mpq_class& threshold) {
  if (!truth_.continuous) throw std::logic_error("oracle has no continuous truth");
  TranscriptEntry q;
  q.type = "cmp";
  q.arg = threshold.get_str();
  return respond(q, truth_.continuous(threshold));
}

bool AdviceOracle::answer_subset(const std::vector<int>& member_set) {
  if (!truth_.subset) throw std::logic_error("oracle has no subset truth");
  TranscriptEntry q;
  q.type = "subset";
  q.arg = member_set;
  return respond(q, truth_.subset(member_set));
}

ErrorReport AdviceOracle::error_report() const {
  ErrorReport r;
  r.positions = lie_positions_;
  r.eta = static_cast<int>(lie_positions_.size());
  r.exceeded_tolerance = r.eta > budget_.H;
  r.seed = policy_.seed;
  return r;
}

}  // namespace ulam
