#include "zgb/null_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zgb/errors.hpp"

namespace zgb {

namespace {

void require_annulus(double rho, const LaurentSeries& series) {
  if (series.empty()) return;
  if (annulus_of(rho) != series.annulus()) {
    std::ostringstream os;
    os << "rho = " << rho << " is outside the " << to_string(series.annulus()) << " annulus of the series (rho_used = "
       << series.rho_used() << ")";
    throw ParameterError(os.str());
  }
}

// sum over k of Re c_k rho^k trig(k alpha) for the exponents selected by keep.
template <class Keep, class Trig>
ext_real weighted_sum(const LaurentSeries& series, const ext_real& rho, Keep keep, Trig trig) {
  ext_real sum(0);
  for (const auto& [k, c] : series.coeffs()) {
    if (!keep(k)) continue;
    sum += c.real() * pow(rho, k) * trig(k);
  }
  return sum;
}

// cos(k pi/2) and sin(k pi/2) for integer k, exact.
int cos_quarter(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

int sin_quarter(int k) {
  switch (((k % 4) + 4) % 4) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

bool is_odd(int k) { return k % 2 != 0; }
bool is_even(int k) { return k % 2 == 0; }

double local_zero_spacing(double t) {
  const double x = std::fabs(t) / (2.0 * std::numbers::pi);
  if (x <= std::numbers::e) return 2.0 * std::numbers::pi;
  return 2.0 * std::numbers::pi / std::log(x);
}

}  // namespace

ProbeSeries extract_probe_series(double rho, double tol) {
  annulus_of(rho);
  ProbeSeries ps;
  ps.rho = rho;
  ps.params = auto_params(ComplexPoint(0.5, rho), tol).with_tail(TailPolicy::fixed);
  ps.series = extract_series(CircleFunction::fgb(ps.params), rho, fgb_extraction_options());
  ps.parity = split_parity(ps.series);
  return ps;
}

std::pair<double, double> antisym_residual(const QuartetPoint& probe, const LaurentSeries& odd_series) {
  require_annulus(probe.rho, odd_series);
  const ext_real rho(probe.rho);
  const ext_real alpha = probe.alpha_ext();
  const ext_real c = weighted_sum(odd_series, rho, is_odd, [&](int k) { return ext_real(cos(k * alpha)); });
  const ext_real s = weighted_sum(odd_series, rho, is_odd, [&](int k) { return ext_real(sin(k * alpha)); });
  return {static_cast<double>(c), static_cast<double>(s)};
}

std::pair<double, double> full_system_residual(const QuartetPoint& probe, const LaurentSeries& odd_series) {
  if (!(std::fabs(probe.epsilon()) < 0.5) || !(probe.eta() > 0.0)) {
    std::ostringstream os;
    os << "probe rho = " << probe.rho << ", alpha = " << probe.alpha
       << " violates |rho cos(alpha)| < 1/2, rho sin(alpha) > 0";
    throw DomainError(os.str());
  }
  require_annulus(probe.rho, odd_series);
  const ext_real rho(probe.rho);
  const ext_real alpha = probe.alpha_ext();
  ext_real sc(0), ss(0);
  for (const auto& [k, c] : odd_series.coeffs()) {
    if (!is_odd(k)) continue;
    const int two_m = k - 1;
    const ext_real w = c.real() * pow(rho, two_m);
    sc += w * cos(two_m * alpha);
    ss += w * sin(two_m * alpha);
  }
  const ext_real ca = probe.canonical ? ext_real(0) : ext_real(cos(alpha));
  const ext_real sa = probe.canonical ? ext_real(1) : ext_real(sin(alpha));
  const ext_real first = rho * ca * sc - rho * sa * ss;
  const ext_real second = rho * sa * sc + rho * ca * ss;
  return {static_cast<double>(first), static_cast<double>(second)};
}

double critical_line_odd_residual(double rho, const LaurentSeries& odd_series) {
  require_annulus(rho, odd_series);
  return static_cast<double>(
      weighted_sum(odd_series, ext_real(rho), is_odd, [](int k) { return ext_real(sin_quarter(k)); }));
}

double critical_line_even_residual(double rho, const LaurentSeries& even_series) {
  if (rho == 0.0) throw DomainError("critical-line even residual needs rho != 0");
  require_annulus(rho, even_series);
  const ext_real r(rho);
  const ext_real sum = weighted_sum(even_series, r, is_even, [](int k) { return ext_real(cos_quarter(k)); });
  const ext_real rhs = ext_real(1) / (ext_real(0.25) + r * r);
  return static_cast<double>(abs(sum - rhs));
}

double critical_line_even_sine_sum(double rho, const LaurentSeries& even_series) {
  require_annulus(rho, even_series);
  return static_cast<double>(
      weighted_sum(even_series, ext_real(rho), is_even, [](int k) { return ext_real(sin_quarter(k)); }));
}

double q_critical_line_outer_sum(double rho, int terms) {
  if (annulus_of(rho) != AnnulusClass::outer) throw ParameterError("outer expansion of Q needs rho > 1/2");
  double sum = 0.0;
  for (int m = 1; m <= terms; ++m) {
    const int k = -2 * m;
    sum += q_coeffs_closed_form(AnnulusClass::outer, k) * std::pow(rho, k) * cos_quarter(k);
  }
  return sum;
}

double hardy_theta(double t) {
  return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(std::numbers::pi);
}

double hardy_z(double t) {
  if (!std::isfinite(t) || std::fabs(t) > kHardyMaxHeight) {
    std::ostringstream os;
    os << "hardy_z is limited to |t| <= " << kHardyMaxHeight << ", got " << t;
    throw CapacityError(os.str());
  }
  const cplx z = std::polar(1.0, hardy_theta(t)) * evaluate_zeta(ComplexPoint(0.5, t)).value;
  if (std::fabs(z.imag()) >= kHardyRealnessTol) {
    std::ostringstream os;
    os << "hardy_z(" << t << ") has imaginary part " << z.imag();
    throw Error(os.str());
  }
  return z.real();
}

ResidualReport residual_report(const QuartetPoint& probe, const ProbeSeries& ps) {
  ResidualReport r;
  r.probe = probe;
  r.params = ps.params;
  r.nodes = ps.series.metadata().nodes;
  r.min_exponent = ps.series.min_exponent();
  r.max_exponent = ps.series.max_exponent();
  r.precision = ps.series.metadata().precision;

  const auto [c, s] = antisym_residual(probe, ps.parity.odd);
  r.r_as_real = std::fabs(c);
  r.r_as_imag = std::fabs(s);

  const ext_cplx z = probe.shifted_ext();
  const ext_cplx point = ext_cplx(ext_real(0.5)) + z;
  r.r_sym = static_cast<double>(abs(eval_series(ps.parity.even, z) - q_of(point)));

  const ComplexPoint sp(0.5 + probe.epsilon(), probe.eta());
  const ZetaValue zv = evaluate_zeta(sp, ps.params);
  r.r_total = std::abs(zv.value);
  r.zeta_error = zv.error_estimate;
  const cplx s_val = sp.s();
  r.scale = std::abs(s_val / std::exp((s_val - 1.0) * std::log(static_cast<double>(ps.params.N))));
  return r;
}

std::vector<ZeroCandidate> scan_critical_line(double rho_min, double rho_max, double step, double tol) {
  if (!(rho_min > 0.0) || !(rho_min < rho_max) || !std::isfinite(rho_max)) {
    std::ostringstream os;
    os << "scan range needs 0 < rho_min < rho_max, got [" << rho_min << ", " << rho_max << "]";
    throw ParameterError(os.str());
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("scan step must be positive");

  std::vector<double> grid;
  const long count = static_cast<long>(std::floor((rho_max - rho_min) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(rho_min + static_cast<double>(i) * step);
  if (grid.back() < rho_max) grid.push_back(rho_max);

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = hardy_z(grid[i]);

  std::vector<ZeroCandidate> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i], b = grid[i + 1];
    double fa = values[i], fb = values[i + 1];
    if (fa == 0.0 && i > 0) continue;  // counted as the right end of the previous interval
    if (fa * fb > 0.0 || (fa == 0.0 && fb == 0.0)) continue;

    ZeroCandidate zc;
    zc.bracket = {a, b};
    zc.step_warning = (b - a) > 0.5 * local_zero_spacing(0.5 * (a + b));
    if (fa == 0.0 || fb == 0.0) {
      zc.rho = zc.oracle_ordinate = fa == 0.0 ? a : b;
    } else {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hardy_z(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zc.rho = 0.5 * (lo + hi);

      // Illinois regula falsi on the original bracket.
      double x0 = a, x1 = b, f0 = fa, f1 = fb;
      int side = 0;
      double root = 0.5 * (a + b);
      for (int it = 0; it < 200; ++it) {
        root = (x0 * f1 - x1 * f0) / (f1 - f0);
        const double fr = hardy_z(root);
        if (fr == 0.0 || std::fabs(x1 - x0) < 1e-13 * std::max(1.0, std::fabs(root))) break;
        if ((fr < 0.0) == (f1 < 0.0)) {
          x1 = root;
          f1 = fr;
          if (side == 1) f0 *= 0.5;
          side = 1;
        } else {
          x0 = root;
          f0 = fr;
          if (side == -1) f1 *= 0.5;
          side = -1;
        }
      }
      zc.oracle_ordinate = root;
    }

    const ProbeSeries ps = extract_probe_series(zc.rho, tol);
    zc.residuals = residual_report(QuartetPoint::canonical_at(zc.rho), ps);
    zc.odd_residual = critical_line_odd_residual(zc.rho, ps.parity.odd);
    zc.even_residual = critical_line_even_residual(zc.rho, ps.parity.even);
    out.push_back(zc);
  }
  std::sort(out.begin(), out.end(), [](const ZeroCandidate& x, const ZeroCandidate& y) { return x.rho < y.rho; });
  return out;
}

std::vector<QuartetPoint> quartet_alpha_grid(double rho, int alpha_count) {
  if (!(rho > 0.5)) throw DomainError("quartet geometry needs rho > 1/2");
  annulus_of(rho);
  if (alpha_count < 1) throw ParameterError("alpha_count must be at least 1");
  const double lo = std::acos(1.0 / (2.0 * rho));
  const double hi = std::numbers::pi / 2.0;
  std::vector<QuartetPoint> grid;
  for (int i = 0; i + 1 < alpha_count; ++i)
    grid.push_back(QuartetPoint::at(rho, lo + (hi - lo) * (i + 1) / alpha_count));
  grid.push_back(QuartetPoint::canonical_at(rho));
  return grid;
}

std::vector<ResidualReport> quartet_grid_scan(double rho, int alpha_count, const ProbeSeries& ps) {
  const auto grid = quartet_alpha_grid(rho, alpha_count);
  if (ps.rho != rho) throw ParameterError("probe series was extracted at a different radius");
  std::vector<ResidualReport> out;
  out.reserve(grid.size());
  for (const QuartetPoint& q : grid) out.push_back(residual_report(q, ps));
  return out;
}

std::vector<ResidualReport> quartet_grid_scan(double rho, int alpha_count, double tol) {
  if (!(rho > 0.5)) throw DomainError("quartet geometry needs rho > 1/2");
  return quartet_grid_scan(rho, alpha_count, extract_probe_series(rho, tol));
}

}  // namespace zgb
