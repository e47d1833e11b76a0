#pragma once

#include <stdexcept>

namespace ulam {

// Advice size k (binary queries) and error tolerance H, with 2H <= k.
struct QueryBudget {
  int k = 0;
  int H = 0;

  QueryBudget() = default;
  QueryBudget(int k_, int H_) : k(k_), H(H_) {
    if (k < 0 || H < 0 || 2 * H > k) {
      throw std::domain_error("query budget requires 0 <= 2H <= k");
    }
  }
};

}  // namespace ulam
