#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zgb/scalar.hpp"

namespace zgb {

using rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultBernoulliDepth = 64;

/// Even-index Bernoulli numbers B_0, B_2, ..., B_max as exact rationals, with
/// binary64 and extended-precision renderings of B_{2mu} and B_{2mu}/(2mu)!.
/// Immutable after construction and safe to share across threads.
class BernoulliTable {
 public:
  explicit BernoulliTable(int max_index = kDefaultBernoulliDepth);

  /// Builds a table from caller-supplied even-index values (B_0, B_2, ...), bypassing the
  /// recurrence. Used for fault injection; satisfies_recurrence() reports the damage.
  static BernoulliTable from_values(std::vector<rational> even_values);

  int max_index() const noexcept { return max_index_; }
  /// Largest mu with B_{2mu} in the table.
  int max_mu() const noexcept { return max_index_ / 2; }

  /// B_index; index must be even, non-negative and at most max_index().
  const rational& exact(int index) const;
  double value(int index) const;

  /// B_{2mu} / (2mu)! in binary64 and extended precision.
  double over_factorial(int mu) const;
  const ext_real& over_factorial_ext(int mu) const;

  /// Checks sum_{k=0}^{n} C(n+1, k) B_k = 0 for every even n in the table (odd B_k taken
  /// as B_1 = -1/2 and zero beyond). Fails on a corrupted table.
  bool satisfies_recurrence() const;

 private:
  BernoulliTable(int max_index, std::vector<rational> even_values);
  void check_index(int index) const;

  int max_index_;
  std::vector<rational> even_;
  std::vector<double> even_double_;
  std::vector<double> over_fact_;
  std::vector<ext_real> over_fact_ext_;
};

/// Process-wide table of depth kDefaultBernoulliDepth.
const BernoulliTable& default_bernoulli_table();

/// B_index from the default table.
rational bernoulli(int index);

/// Product (s+1)(s+2)...(s+2mu-2); equals 1 for mu = 1.
template <class C>
C rising_product(const C& s, int mu) {
  C product(1);
  for (int j = 1; j <= 2 * mu - 2; ++j) product *= s + real_t<C>(j);
  return product;
}

/// Principal-branch log Gamma (continuous from the positive real axis, sum-of-logs branch
/// for negative real part). Throws PoleError at non-positive integers.
cplx log_gamma(cplx z);

/// sin(pi z / 2) with exact zeros at even integers of the real axis.
cplx sin_half_pi(cplx z);

}  // namespace zgb
