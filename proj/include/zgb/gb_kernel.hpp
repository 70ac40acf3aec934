#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include "zgb/core_numerics.hpp"
#include "zgb/scalar.hpp"

namespace zgb {

/// Raw ingredients of the Gram-Backlund sum at one point, shared by Z_GB and F_GB so both
/// sides of the factor identity see identical truncation.
template <class C>
struct GbTerms {
  C partial;      ///< sum_{n=1}^{N-1} n^{-s}
  C n_pow_neg_s;  ///< N^{-s}
  /// tail[mu-1] = B_{2mu}/(2mu)! * (s+1)...(s+2mu-2) * N^{-2mu}; the Z_GB tail term is
  /// s * N^{1-s} times this.
  std::vector<C> tail;
};

/// Evaluates GbTerms for a fixed cutoff N. Powers n^{-s} are built multiplicatively from
/// prime powers, so one exponential per prime below N.
template <class C>
class GbKernel {
 public:
  using R = real_t<C>;

  GbKernel(int N, int tail_count, const BernoulliTable& table)
      : n_(N), tail_count_(std::min(tail_count, table.max_mu())), table_(&table), smallest_factor_(N + 1, 0),
        log_(N + 1) {
    for (int i = 2; i <= N; ++i) {
      if (smallest_factor_[i] != 0) continue;
      for (int j = i; j <= N; j += i)
        if (smallest_factor_[j] == 0) smallest_factor_[j] = i;
    }
    using std::log;
    for (int i = 2; i <= N; ++i)
      if (smallest_factor_[i] == i || i == N) log_[i] = log(R(i));
  }

  int cutoff() const noexcept { return n_; }
  int tail_count() const noexcept { return tail_count_; }

  GbTerms<C> terms(const C& s) const {
    using std::exp;
    GbTerms<C> out;
    std::vector<C> pow(static_cast<std::size_t>(n_));
    pow[1] = C(1);
    C partial(1);
    for (int n = 2; n < n_; ++n) {
      const int p = smallest_factor_[n];
      pow[n] = (p == n) ? C(exp(-s * log_[n])) : C(pow[p] * pow[n / p]);
      partial += pow[n];
    }
    out.partial = partial;
    out.n_pow_neg_s = exp(-s * log_[n_]);

    const R inv_n2 = R(1) / (R(n_) * R(n_));
    C rising(1);
    R n_pow(1);
    out.tail.reserve(static_cast<std::size_t>(tail_count_));
    for (int mu = 1; mu <= tail_count_; ++mu) {
      if (mu > 1) rising *= (s + R(2 * mu - 3)) * (s + R(2 * mu - 2));
      n_pow *= inv_n2;
      out.tail.push_back(rising * (over_factorial(mu) * n_pow));
    }
    return out;
  }

 private:
  R over_factorial(int mu) const {
    if constexpr (std::is_same_v<C, cplx>)
      return table_->over_factorial(mu);
    else
      return table_->over_factorial_ext(mu);
  }

  int n_;
  int tail_count_;
  const BernoulliTable* table_;
  std::vector<int> smallest_factor_;
  std::vector<R> log_;
};

}  // namespace zgb
