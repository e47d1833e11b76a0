#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ulam/budget.hpp"

namespace ulam {

// S(N, m) = sum_{j=0..m} C(N, j), computed exactly.
// Throws std::domain_error unless 0 <= m <= N.
mpz_class partial_binomial_sum(long N, long m);

// Same sum with relaxed edges: m < 0 yields 0, m >= N yields 2^N.
// This is the weight kernel used by the game engines.
mpz_class partial_binomial_sum_clamped(long N, long m);

mpz_class pow2(long e);

// floor(a / b) and ceil(a / b) for positive b.
mpz_class floor_div(const mpz_class& a, const mpz_class& b);
mpz_class ceil_div(const mpz_class& a, const mpz_class& b);

struct MuBounds {
  mpz_class lower;  // floor(2^{k-H} / S(k-H, H))
  mpz_class upper;  // floor(2^k / S(k, H))
};

MuBounds mu_bounds(const QueryBudget& budget);

// Binary entropy -p lg p - (1-p) lg(1-p); domain (0, 1).
long double entropy(long double p);

struct EntropyBracket {
  long double lower;
  long double upper;
};

// Bracket 2^{N H(m/N)} / sqrt(8 m (1 - m/N)) <= S(N, m) <= 2^{N H(m/N)},
// valid for 0 < m < N/2 (strict).
EntropyBracket partial_sum_entropy_bracket(long N, long m);

// Conversions that keep long double's full mantissa.
long double to_ld(const mpz_class& z);
long double to_ld(const mpq_class& q);

// Berlekamp weight table: weight(q, h) = S(q, h) for remaining queries
// q in [0, k] and lie slack h in [0, H]; h < 0 is weight zero.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(int max_q, int max_h);

  // Weight as uint64; requires max_q <= 62 (checked at construction).
  std::uint64_t operator()(int q, int h) const {
    if (h < 0) return 0;
    if (h > max_h_) h = max_h_;
    return w_[static_cast<std::size_t>(q) * (max_h_ + 1) + h];
  }

 private:
  int max_h_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace ulam
