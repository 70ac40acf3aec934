#pragma once

#include <utility>
#include <vector>

#include "zgb/laurent.hpp"
#include "zgb/zeta_gb.hpp"

namespace zgb {

/// Truncation and extraction shared by every residual computed on one circle.
struct ProbeSeries {
  double rho = 0.0;
  EvalParams params;  ///< fixed-tail truncation used for both F_GB and Z_GB
  LaurentSeries series;
  ParityPair parity;
};

/// auto_params(1/2 + i rho, tol) with a fixed tail, then an adaptive F_GB extraction on the
/// circle of radius rho.
ProbeSeries extract_probe_series(double rho, double tol = kDefaultTolerance);

/// Residuals of the zero conditions at one probe point.
struct ResidualReport {
  double r_as_real = 0.0;  ///< |sum C_{2m+1} rho^{2m+1} cos((2m+1) alpha)|
  double r_as_imag = 0.0;  ///< |sum C_{2m+1} rho^{2m+1} sin((2m+1) alpha)|
  double r_sym = 0.0;      ///< |F^S - Q| at the probe
  double r_total = 0.0;    ///< |Z_GB| at the probe, same truncation
  /// |s / N^{s-1}|: r_total <= scale (|F^AS| + r_sym) + zeta_error.
  double scale = 0.0;
  double zeta_error = 0.0;
  QuartetPoint probe;
  EvalParams params;
  int nodes = 0;
  int min_exponent = 0;
  int max_exponent = 0;
  Precision precision = Precision::binary64;
};

struct ZeroCandidate {
  double rho = 0.0;  ///< bisection estimate of the ordinate
  std::pair<double, double> bracket;
  ResidualReport residuals;
  double oracle_ordinate = 0.0;  ///< regula falsi refinement of hardy_z on the same bracket
  double odd_residual = 0.0;     ///< critical_line_odd_residual (signed)
  double even_residual = 0.0;    ///< critical_line_even_residual
  bool step_warning = false;     ///< grid step too coarse for the local zero spacing
};

/// The two sums sum_m C_{2m+1} rho^{2m+1} (cos, sin)((2m+1) alpha), signed.
/// Throws ParameterError on annulus mismatch.
std::pair<double, double> antisym_residual(const QuartetPoint& probe, const LaurentSeries& odd_series);

/// Both left-hand sides of the angle-addition form
///   rho cos a S_c - rho sin a S_s,  rho sin a S_c + rho cos a S_s,
/// S_c = sum C_{2m+1} rho^{2m} cos(2m a), S_s = sum C_{2m+1} rho^{2m} sin(2m a).
/// Throws DomainError unless |rho cos a| < 1/2 and rho sin a > 0.
std::pair<double, double> full_system_residual(const QuartetPoint& probe, const LaurentSeries& odd_series);

/// sum_m C_{2m+1} rho^{2m+1} (-1)^m, signed.
double critical_line_odd_residual(double rho, const LaurentSeries& odd_series);
/// |sum_m C_{2m} rho^{2m} (-1)^m - 1/(1/4 + rho^2)|. Throws DomainError at rho = 0.
double critical_line_even_residual(double rho, const LaurentSeries& even_series);
/// sum_m C_{2m} rho^{2m} sin(m pi), identically zero.
double critical_line_even_sine_sum(double rho, const LaurentSeries& even_series);
/// Outer expansion of Q on the critical line, sum_{k=-2,-4,..} q_k rho^k cos(k pi/2), with
/// q_k from q_coeffs_closed_form. Requires rho > 1/2.
double q_critical_line_outer_sum(double rho, int terms);

inline constexpr double kHardyMaxHeight = 1000.0;
inline constexpr double kHardyRealnessTol = 1e-8;

/// Z(t) = e^{i theta(t)} zeta(1/2 + it), theta(t) = Im log Gamma(1/4 + it/2) - (t/2) ln pi.
/// Throws CapacityError for |t| > kHardyMaxHeight.
double hardy_z(double t);
/// Riemann-Siegel theta.
double hardy_theta(double t);

/// Residual report at the probe from a prepared extraction.
ResidualReport residual_report(const QuartetPoint& probe, const ProbeSeries& ps);

inline constexpr double kBisectionTol = 1e-8;
inline constexpr double kDefaultScanStep = 0.05;

/// Brackets sign changes of hardy_z on rho_min + i*step, refines by bisection and attaches
/// critical-line residuals. Throws ParameterError unless 0 < rho_min < rho_max and step > 0.
std::vector<ZeroCandidate> scan_critical_line(double rho_min, double rho_max, double step = kDefaultScanStep,
                                              double tol = kDefaultTolerance);

/// alpha_i = a_lo + (pi/2 - a_lo)(i+1)/count, a_lo = arccos(1/(2 rho)); the last point is
/// the canonical endpoint.
std::vector<QuartetPoint> quartet_alpha_grid(double rho, int alpha_count);

/// ResidualReport for every grid angle. Throws DomainError for rho <= 1/2.
std::vector<ResidualReport> quartet_grid_scan(double rho, int alpha_count, const ProbeSeries& ps);
std::vector<ResidualReport> quartet_grid_scan(double rho, int alpha_count, double tol = kDefaultTolerance);

}  // namespace zgb
