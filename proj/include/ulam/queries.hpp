#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulam/budget.hpp"

namespace ulam {

// "is x <= threshold?" over candidate ids.
struct ComparisonQuery {
  long threshold = 0;
};

// "is x <= threshold?" over (0, 1].
struct ContinuousQuery {
  mpq_class threshold;
};

// "is x in member_set?"
struct SubsetQuery {
  std::vector<int> member_set;
};

struct TranscriptEntry {
  std::string type;  // "cmp" | "subset"
  nlohmann::json arg;
  bool response = false;
};

// Ordered record of queries and responses; lie positions are known only to
// the truth holder and stay empty on adversary-side transcripts.
struct Transcript {
  QueryBudget budget;
  std::vector<TranscriptEntry> entries;
  std::vector<int> lie_positions;
  bool exceeded_tolerance = false;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["budget"] = {{"k", budget.k}, {"H", budget.H}};
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
      j["entries"].push_back({{"type", e.type}, {"arg", e.arg}, {"response", e.response}});
    }
    j["lie_positions"] = lie_positions;
    return j;
  }
};

// Responder interface shared by oracles and adversaries. A game asks only
// the query kinds it declares; the default implementations reject.
class Responder {
 public:
  virtual ~Responder() = default;
  virtual bool answer_comparison(long /*threshold*/) {
    throw std::logic_error("responder does not take comparison queries");
  }
  virtual bool answer_continuous(const mpq_class& /*threshold*/) {
    throw std::logic_error("responder does not take continuous queries");
  }
  virtual bool answer_subset(const std::vector<int>& /*member_set*/) {
    throw std::logic_error("responder does not take subset queries");
  }
};

// Replays a fixed response string; used by the exhaustive verifiers.
class ScriptedResponder : public Responder {
 public:
  explicit ScriptedResponder(std::vector<bool> script) : script_(std::move(script)) {}
  bool answer_comparison(long) override { return next(); }
  bool answer_continuous(const mpq_class&) override { return next(); }
  bool answer_subset(const std::vector<int>&) override { return next(); }
  std::size_t used() const { return pos_; }

 private:
  bool next() {
    if (pos_ >= script_.size()) throw std::logic_error("script exhausted");
    return script_[pos_++];
  }
  std::vector<bool> script_;
  std::size_t pos_ = 0;
};

}  // namespace ulam
