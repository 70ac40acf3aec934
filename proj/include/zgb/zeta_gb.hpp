#pragma once

#include "zgb/core_numerics.hpp"
#include "zgb/gb_kernel.hpp"
#include "zgb/scalar.hpp"

namespace zgb {

/// A point s = X + iY, with the shifted view s' = s - 1/2 = epsilon + i eta.
struct ComplexPoint {
  double X = 0.0;
  double Y = 0.0;

  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(double x, double y = 0.0) : X(x), Y(y) {}
  ComplexPoint(cplx s) : X(s.real()), Y(s.imag()) {}  // NOLINT(google-explicit-constructor)

  cplx s() const { return {X, Y}; }
  cplx shifted() const { return {X - 0.5, Y}; }
  double epsilon() const { return X - 0.5; }
  double eta() const { return Y; }
  ComplexPoint conj() const { return {X, -Y}; }
  ComplexPoint reflected() const { return {1.0 - X, -Y}; }  ///< 1 - s

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

/// How the asymptotic Bernoulli tail is cut.
enum class TailPolicy {
  smallest_term,  ///< stop before the first local minimum of |term| (at most mu_max terms)
  fixed,          ///< exactly mu_max terms; keeps F_GB analytic along a contour
};

/// Truncation of the Gram-Backlund sum.
struct EvalParams {
  int N = 10;       ///< partial-sum cutoff, N >= 2
  int mu_max = 10;  ///< tail cutoff, 2*mu_max <= Bernoulli table depth
  double tol = 1e-12;
  TailPolicy tail = TailPolicy::smallest_term;

  void validate(const BernoulliTable& table = default_bernoulli_table()) const;
  EvalParams with_tail(TailPolicy policy) const {
    EvalParams p = *this;
    p.tail = policy;
    return p;
  }
};

/// A truncated value with its in-band quality report.
struct ZetaValue {
  cplx value;
  double error_estimate = 0.0;
  bool quality_ok = true;  ///< error_estimate <= params.tol
  int tail_terms = 0;      ///< tail terms actually summed
  EvalParams params;
};

inline constexpr double kDefaultTolerance = 1e-12;
/// Safety factor applied to the first omitted tail term.
inline constexpr double kTailSafety = 4.0;

/// Partial Dirichlet sum plus the midpoint integral tail (M + 1/2)^{1-s}/(s-1).
/// Without the tail correction the error is below terms^{-(X-1)}/(X-1).
/// Throws DomainError for X <= 1.
cplx dirichlet_oracle(ComplexPoint s, long terms);

/// Z_GB(s) truncated per p. Throws PoleError at s = 1.
ZetaValue evaluate_zeta(ComplexPoint s, const EvalParams& p, const BernoulliTable& table = default_bernoulli_table());
/// Z_GB(s) with auto_params(s, tol).
ZetaValue evaluate_zeta(ComplexPoint s, double tol = kDefaultTolerance,
                        const BernoulliTable& table = default_bernoulli_table());
/// Same truncation as evaluate_zeta, carried out in extended precision and rounded.
ZetaValue evaluate_zeta_extended(ComplexPoint s, const EvalParams& p,
                                 const BernoulliTable& table = default_bernoulli_table());

/// N >= max(10, ceil(2(|Y| + |X| + 1))) and the smallest mu_max whose estimated remainder is
/// below tol. N is doubled when the table depth is insufficient. Throws CapacityError when
/// tol is below the rounding floor, naming the achievable tolerance.
EvalParams auto_params(ComplexPoint s, double tol, const BernoulliTable& table = default_bernoulli_table());

/// Q(s) = 1/(s(1-s)). Throws PoleError at s in {0, 1}.
cplx q_of(ComplexPoint s);
ext_cplx q_of(const ext_cplx& s);

/// F_GB(s) = (N^{s-1}/s) sum_{n<N} n^{-s} + 1/(2Ns) + sum_mu B_{2mu}/(N^{2mu}(2mu)!) (s+1)...(s+2mu-2),
/// with the same tail cut as evaluate_zeta. Throws PoleError at s = 0.
ZetaValue f_gb(ComplexPoint s, const EvalParams& p, const BernoulliTable& table = default_bernoulli_table());

/// |F_GB - Q - (N^{s-1}/s) Z_GB| with one shared truncation. Throws PoleError at s in {0, 1}.
double check_factor_identity(ComplexPoint s, const EvalParams& p,
                             const BernoulliTable& table = default_bernoulli_table());

/// 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), zeta(1-s) from evaluate_zeta.
/// Throws CapacityError for |Y| beyond kReflectionMaxHeight.
ZetaValue reflect_zeta(ComplexPoint s, double tol = kDefaultTolerance,
                       const BernoulliTable& table = default_bernoulli_table());

inline constexpr double kReflectionMaxHeight = 200.0;

/// F_GB with a fixed tail of p.mu_max terms, evaluable in binary64 and extended precision.
/// This is the object whose Laurent expansion on the circle is studied.
class FgbFunction {
 public:
  explicit FgbFunction(const EvalParams& p, const BernoulliTable& table = default_bernoulli_table());

  cplx operator()(cplx s) const;
  ext_cplx operator()(const ext_cplx& s) const;

  const EvalParams& params() const noexcept { return params_; }

 private:
  EvalParams params_;
  GbKernel<cplx> kernel_;
  GbKernel<ext_cplx> kernel_ext_;
};

}  // namespace zgb
