#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zgb/scalar.hpp"
#include "zgb/zeta_gb.hpp"

namespace zgb {

/// Position of a circle centred at s = 1/2 relative to the poles of Q at s = 0, 1.
enum class AnnulusClass {
  inner,  ///< rho < 1/2: Taylor regime, poles outside the circle
  outer,  ///< rho > 1/2: poles inside, negative exponents appear
};

const char* to_string(AnnulusClass c);
const char* to_string(Precision p);

inline constexpr double kPoleExclusion = 1e-3;

/// Throws ParameterError when rho <= 0 or |rho - 1/2| <= exclusion.
AnnulusClass annulus_of(double rho, double exclusion = kPoleExclusion);

/// Circle s = 1/2 + rho e^{i theta} with K uniform nodes theta_j = 2 pi j / K.
class GammaCircle {
 public:
  GammaCircle(double rho, int nodes, double exclusion = kPoleExclusion);

  double rho() const noexcept { return rho_; }
  int nodes() const noexcept { return nodes_; }
  AnnulusClass annulus() const noexcept { return annulus_; }

  double theta(int j) const;
  /// e^{i theta_j}, exact on the axes.
  cplx unit(int j) const;
  ext_cplx unit_ext(int j) const;

 private:
  double rho_;
  int nodes_;
  AnnulusClass annulus_;
};

/// Representative member of a hypothetical quartet: s' = rho e^{i alpha}.
/// A canonical point (alpha = pi/2 exactly) is flagged so extended-precision arithmetic
/// uses the exact right angle rather than its binary64 rounding.
struct QuartetPoint {
  double rho = 1.0;
  double alpha = 0.0;
  bool canonical = false;

  static QuartetPoint at(double rho, double alpha) { return {rho, alpha, false}; }
  static QuartetPoint canonical_at(double rho);

  double epsilon() const;
  double eta() const;
  cplx shifted() const;
  ext_cplx shifted_ext() const;
  ext_real alpha_ext() const;

  /// 0 < cos(alpha) < 1/(2 rho) and sqrt(1 - 1/(4 rho^2)) < sin(alpha) < 1.
  bool strict_offline() const;
  /// arccos(1/(2 rho)) < alpha <= pi/2, canonical endpoint included.
  bool admissible() const;
};

/// A function of s sampled on circles. eval_ext is optional; when present, automatic
/// precision samples with it.
struct CircleFunction {
  std::string name;
  std::function<cplx(cplx)> eval;
  std::function<ext_cplx(const ext_cplx&)> eval_ext;

  static CircleFunction q();
  /// Truncated F_GB with a fixed tail of p.mu_max terms.
  static CircleFunction fgb(const EvalParams& p, const BernoulliTable& table = default_bernoulli_table());
  static CircleFunction constant(cplx value);
  /// The figure series sum_{m>=1} 4^{-m} s'^{-2m} in closed form (1/4)/(s(s-1)).
  static CircleFunction figure_closed_form();
};

struct Samples {
  double rho = 0.0;
  Precision precision = Precision::binary64;
  std::vector<ext_cplx> values;  ///< grid order j = 0..K-1
};

/// f(1/2 + rho e^{i theta_j}) for every node. Evaluator failures surface as SamplingError
/// naming theta_j.
Samples sample_circle(const CircleFunction& f, const GammaCircle& circle, Precision precision = Precision::automatic);

struct SeriesMetadata {
  std::string source;
  int nodes = 0;
  Precision precision = Precision::binary64;
  double stability_delta = 0.0;  ///< max |c_k(2K) - c_k(K)| over the window, when measured
};

/// Two-sided coefficient table c_k, k in [min_exponent, max_exponent], for the expansion
/// sum_k c_k s'^k about s = 1/2. Immutable.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(double rho_used, std::map<int, ext_cplx> coeffs, SeriesMetadata meta = {});

  double rho_used() const noexcept { return rho_used_; }
  AnnulusClass annulus() const noexcept { return annulus_; }
  const std::map<int, ext_cplx>& coeffs() const noexcept { return coeffs_; }
  const SeriesMetadata& metadata() const noexcept { return meta_; }

  bool empty() const noexcept { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  cplx coeff(int k) const;
  ext_cplx coeff_ext(int k) const;

 private:
  double rho_used_ = 0.0;
  AnnulusClass annulus_ = AnnulusClass::outer;
  std::map<int, ext_cplx> coeffs_;
  SeriesMetadata meta_;
};

/// c_k = rho^{-k} (1/K) sum_j f_j e^{-2 pi i j k / K} for k in [-m_neg, m_pos].
/// Requires K >= 4 max(m_pos, m_neg) + 4.
LaurentSeries laurent_coeffs(const Samples& samples, int m_pos, int m_neg);
LaurentSeries laurent_coeffs(const std::vector<cplx>& samples, double rho, int m_pos, int m_neg);

/// Closed-form expansion coefficient of Q about s = 1/2: inner 4^{m+1} at k = 2m >= 0,
/// outer -4^{1-m} at k = -2m <= -2, zero elsewhere.
double q_coeffs_closed_form(AnnulusClass annulus, int k);

struct ParityPair {
  LaurentSeries even;  ///< symmetric component under s -> 1 - s
  LaurentSeries odd;   ///< anti-symmetric component
};

ParityPair split_parity(const LaurentSeries& series);

/// sum_k c_k s'^k. Throws ParameterError when |s'| lies in the other annulus class and
/// PoleError at s' = 0 with negative exponents present.
cplx eval_series(const LaurentSeries& series, cplx s_prime);
ext_cplx eval_series(const LaurentSeries& series, const ext_cplx& s_prime);

struct OrthogonalityResult {
  double antisym_even = 0.0;  ///< |(1/2pi) int F^AS rho^{-2m} e^{-i 2m theta}|, vanishes
  double sym_odd = 0.0;       ///< |(1/2pi) int F^S rho^{-(2m+1)} e^{-i (2m+1) theta}|, vanishes
  cplx sym_even;              ///< (1/2pi) int F^S rho^{-2m} e^{-i 2m theta} = C_{2m}
  cplx antisym_odd;           ///< (1/2pi) int F^AS rho^{-(2m+1)} e^{-i (2m+1) theta} = C_{2m+1}
};

/// Trapezoid integrals of the parity components of f, split in sample space through
/// f(theta) +- f(theta + pi). Needs an even node count.
OrthogonalityResult parity_orthogonality_check(const CircleFunction& f, const GammaCircle& circle, int m,
                                               Precision precision = Precision::automatic);

struct ExtractionOptions {
  int m_pos = 40;
  int m_neg = 40;
  /// Grow/shrink the window to the modes whose amplitude |c_k| rho^k exceeds amplitude_tol.
  bool adaptive = false;
  double amplitude_tol = 1e-13;
  /// Node count; 0 picks the smallest power of two >= 8 max(m_pos, m_neg).
  int nodes = 0;
  /// K is doubled until every windowed coefficient moves by less than this.
  double stability_tol = 1e-11;
  int max_nodes = 1 << 16;
  Precision precision = Precision::automatic;
};

/// Samples f on the circle of radius rho and extracts its Laurent window, doubling K until
/// the aliasing-stability check passes.
LaurentSeries extract_series(const CircleFunction& f, double rho, const ExtractionOptions& options = {});

/// Options used for F_GB: adaptive window starting from 40.
ExtractionOptions fgb_extraction_options();

}  // namespace zgb
