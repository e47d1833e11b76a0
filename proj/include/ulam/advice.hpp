#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ulam/budget.hpp"
#include "ulam/queries.hpp"

namespace ulam {

enum class PolicyKind { None, Fixed, Random, Greedy, Minimax };

// Error-injection policy. Config spelling:
//   "none" | "fixed:[i,...]" | "random:eta=E,seed=S" | "greedy" | "minimax"
struct ErrorPolicy {
  PolicyKind kind = PolicyKind::None;
  std::vector<int> fixed_positions;
  int eta = 0;
  std::uint64_t seed = 0;

  static ErrorPolicy parse(const std::string& text);
  std::string to_string() const;
};

struct ErrorReport {
  int eta = 0;
  std::vector<int> positions;
  bool exceeded_tolerance = false;
  std::uint64_t seed = 0;
};

// Ground truth for the three query kinds; a problem provides the ones its
// game asks.
struct TruthFunctions {
  std::function<bool(long)> comparison;
  std::function<bool(const mpq_class&)> continuous;
  std::function<bool(const std::vector<int>&)> subset;
};

// Mirror of the questioner's weight state, consulted by the greedy policy:
// flipping is profitable when it leaves the larger surviving weight.
class WeightShadow {
 public:
  virtual ~WeightShadow() = default;
  // true when answering `response` keeps at least as much weight alive as
  // answering its negation.
  virtual bool response_keeps_larger_half(const TranscriptEntry& query, bool response) = 0;
  virtual void apply(const TranscriptEntry& query, bool response) = 0;
};

std::unique_ptr<WeightShadow> make_discrete_shadow(long m, QueryBudget budget);
std::unique_ptr<WeightShadow> make_continuous_shadow(QueryBudget budget);
// Shadow for a block search whose comparison thresholds arrive in index
// space; block_ends maps block id to its largest index.
std::unique_ptr<WeightShadow> make_block_shadow(std::vector<long> block_ends, QueryBudget budget);
std::unique_ptr<WeightShadow> make_subset_shadow(long n, QueryBudget budget);

// Truth source wrapped with an error-injection policy. Accumulates the
// transcript and realized lie positions. The minimax policy cannot be
// played online; resolve it with worst_case_flips below and use a Fixed
// policy for the actual run.
class AdviceOracle : public Responder {
 public:
  AdviceOracle(TruthFunctions truth, QueryBudget budget, ErrorPolicy policy,
               std::unique_ptr<WeightShadow> shadow = nullptr);

  bool answer_comparison(long threshold) override;
  bool answer_continuous(const mpq_class& threshold) override;
  bool answer_subset(const std::vector<int>& member_set) override;

  const Transcript& transcript() const { return transcript_; }
  ErrorReport error_report() const;
  int lies_told() const { return static_cast<int>(lie_positions_.size()); }

 private:
  bool respond(const TranscriptEntry& query, bool truth);
  bool should_flip(const TranscriptEntry& query, bool truth) const;

  TruthFunctions truth_;
  QueryBudget budget_;
  ErrorPolicy policy_;
  std::unique_ptr<WeightShadow> shadow_;
  std::vector<int> planned_flips_;
  Transcript transcript_;
  std::vector<int> lie_positions_;
};

ErrorPolicy truth_policy();

// Deterministic draw of `eta` distinct positions from [0, k).
std::vector<int> draw_lie_positions(int k, int eta, std::uint64_t seed);

// All flip sets of size <= H over query positions [0, k); the minimax
// policies enumerate these.
std::vector<std::vector<int>> flip_patterns(int k, int H);

// Exhaustive worst case over flip patterns: runs `play` once per pattern
// (game length k, at most H flips) and returns the pattern maximizing
// `score` together with that score. Feasible for small k only.
struct MinimaxOutcome {
  std::vector<int> flips;
  double score = 0.0;
};
MinimaxOutcome worst_case_flips(int k, int H,
                                const std::function<double(const std::vector<int>&)>& play);

}  // namespace ulam
