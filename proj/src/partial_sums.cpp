#include "ulam/partial_sums.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ulam {

mpz_class partial_binomial_sum(long N, long m) {
  if (N < 0 || m < 0 || m > N) {
    throw std::domain_error("partial_binomial_sum requires 0 <= m <= N");
  }
  return partial_binomial_sum_clamped(N, m);
}

mpz_class partial_binomial_sum_clamped(long N, long m) {
  if (m < 0) return 0;
  if (m >= N) return pow2(N);
  mpz_class sum = 0;
  mpz_class binom = 1;  // C(N, 0)
  for (long j = 0; j <= m; ++j) {
    sum += binom;
    binom *= N - j;
    binom /= j + 1;  // exact: C(N, j+1)
  }
  return sum;
}

mpz_class pow2(long e) {
  mpz_class r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

MuBounds mu_bounds(const QueryBudget& budget) {
  const long k = budget.k;
  const long H = budget.H;
  MuBounds r;
  r.lower = floor_div(pow2(k - H), partial_binomial_sum(k - H, std::min(H, k - H)));
  r.upper = floor_div(pow2(k), partial_binomial_sum(k, H));
  return r;
}

long double entropy(long double p) {
  if (!(p > 0.0L && p < 1.0L)) {
    throw std::domain_error("entropy requires p in (0, 1)");
  }
  return -p * std::log2(p) - (1.0L - p) * std::log2(1.0L - p);
}

EntropyBracket partial_sum_entropy_bracket(long N, long m) {
  if (!(m > 0 && 2 * m < N)) {
    throw std::domain_error("entropy bracket requires 0 < m < N/2");
  }
  const long double ratio = static_cast<long double>(m) / static_cast<long double>(N);
  const long double top = std::exp2l(static_cast<long double>(N) * entropy(ratio));
  const long double denom = std::sqrt(8.0L * static_cast<long double>(m) * (1.0L - ratio));
  return {top / denom, top};
}

long double to_ld(const mpz_class& z) {
  // mpz_get_d truncates to 53 bits; go through the decimal string instead.
  const std::string s = z.get_str();
  return strtold(s.c_str(), nullptr);
}

long double to_ld(const mpq_class& q) {
  return to_ld(mpz_class(q.get_num())) / to_ld(mpz_class(q.get_den()));
}

WeightTable::WeightTable(int max_q, int max_h) : max_h_(max_h) {
  if (max_q < 0 || max_q > 62) {
    throw std::domain_error("weight table limited to 62 remaining queries");
  }
  if (max_h < 0) throw std::domain_error("negative tolerance");
  w_.assign(static_cast<std::size_t>(max_q + 1) * (max_h + 1), 0);
  for (int q = 0; q <= max_q; ++q) {
    for (int h = 0; h <= max_h; ++h) {
      const mpz_class v = partial_binomial_sum_clamped(q, h);
      w_[static_cast<std::size_t>(q) * (max_h + 1) + h] = v.get_ui();
    }
  }
}

}  // namespace ulam
