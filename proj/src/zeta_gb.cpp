#include "zgb/zeta_gb.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "zgb/errors.hpp"

namespace zgb {

namespace {

constexpr double kRoundoff = std::numeric_limits<double>::epsilon();

std::string point_text(ComplexPoint s) {
  std::ostringstream os;
  os.precision(17);
  os << s.X << (s.Y < 0 ? "-" : "+") << std::fabs(s.Y) << "i";
  return os.str();
}

struct TailCut {
  int included = 0;
  double omitted_abs = 0.0;  // |first omitted F-form term|
};

template <class C>
TailCut choose_cut(const std::vector<C>& tail, int mu_max, TailPolicy policy) {
  using std::abs;
  const int available = static_cast<int>(tail.size());
  TailCut cut;
  cut.included = std::min(mu_max, available);
  if (policy == TailPolicy::smallest_term) {
    for (int mu = 1; mu <= cut.included && mu < available; ++mu) {
      if (abs(tail[mu]) >= abs(tail[mu - 1])) {  // local minimum at mu
        cut.included = mu - 1;
        break;
      }
    }
  }
  if (available == 0) return cut;
  const int omitted = std::min(cut.included, available - 1);
  cut.omitted_abs = static_cast<double>(abs(tail[omitted]));
  return cut;
}

double abs_partial_sum(int N, double X) {
  double sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -X);
  return sum;
}

double rounding_floor(ComplexPoint s, int N) {
  const double tail_head = std::pow(static_cast<double>(N), 1.0 - s.X) / std::abs(s.s() - 1.0);
  return 2.0 * kRoundoff * (abs_partial_sum(N, s.X) + tail_head + 1.0);
}

void require_not_one(ComplexPoint s) {
  if (s.X == 1.0 && s.Y == 0.0) throw PoleError("zeta pole at s = 1");
}

void require_not_zero(ComplexPoint s, const char* what) {
  if (s.X == 0.0 && s.Y == 0.0) throw PoleError(std::string(what) + " pole at s = 0");
}

template <class C>
C assemble_zeta(const GbTerms<C>& t, const C& s, int N, int included) {
  const real_t<C> n(N);
  const C n_pow_1ms = t.n_pow_neg_s * n;
  C tail_sum(0);
  for (int mu = included; mu >= 1; --mu) tail_sum += t.tail[mu - 1];
  return t.partial + n_pow_1ms / (s - real_t<C>(1)) + t.n_pow_neg_s / real_t<C>(2) + s * n_pow_1ms * tail_sum;
}

template <class C>
C assemble_fgb(const GbTerms<C>& t, const C& s, int N, int included) {
  const real_t<C> n(N);
  C tail_sum(0);
  for (int mu = included; mu >= 1; --mu) tail_sum += t.tail[mu - 1];
  return t.partial / (s * n * t.n_pow_neg_s) + real_t<C>(1) / (real_t<C>(2) * n * s) + tail_sum;
}

}  // namespace

void EvalParams::validate(const BernoulliTable& table) const {
  if (N < 2) throw ParameterError("N must be at least 2, got " + std::to_string(N));
  if (mu_max < 1) throw ParameterError("mu_max must be at least 1, got " + std::to_string(mu_max));
  if (2 * mu_max > table.max_index())
    throw CapacityError("2*mu_max = " + std::to_string(2 * mu_max) + " exceeds Bernoulli table depth " +
                        std::to_string(table.max_index()));
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
}

cplx dirichlet_oracle(ComplexPoint s, long terms) {
  if (!(s.X > 1.0))
    throw DomainError("Dirichlet series diverges for X <= 1 (s = " + point_text(s) + ")");
  if (terms < 1) throw ParameterError("dirichlet_oracle needs at least one term");
  const cplx z = s.s();
  cplx sum = 0.0;
  for (long n = terms; n >= 1; --n) sum += std::exp(-z * std::log(static_cast<double>(n)));
  const double m = static_cast<double>(terms) + 0.5;
  return sum + std::exp((1.0 - z) * std::log(m)) / (z - 1.0);
}

ZetaValue evaluate_zeta(ComplexPoint s, const EvalParams& p, const BernoulliTable& table) {
  p.validate(table);
  require_not_one(s);
  const cplx z = s.s();
  const GbKernel<cplx> kernel(p.N, p.mu_max + 1, table);
  const auto terms = kernel.terms(z);
  const TailCut cut = choose_cut(terms.tail, p.mu_max, p.tail);

  ZetaValue out;
  out.value = assemble_zeta(terms, z, p.N, cut.included);
  const double scale = std::abs(z * terms.n_pow_neg_s * static_cast<double>(p.N));
  double tail_abs = 0.0;
  for (int mu = 0; mu < cut.included; ++mu) tail_abs += std::abs(terms.tail[mu]);
  out.error_estimate =
      kTailSafety * scale * cut.omitted_abs + rounding_floor(s, p.N) + 8.0 * kRoundoff * scale * tail_abs;
  out.quality_ok = out.error_estimate <= p.tol;
  out.tail_terms = cut.included;
  out.params = p;
  return out;
}

ZetaValue evaluate_zeta(ComplexPoint s, double tol, const BernoulliTable& table) {
  return evaluate_zeta(s, auto_params(s, tol, table), table);
}

ZetaValue evaluate_zeta_extended(ComplexPoint s, const EvalParams& p, const BernoulliTable& table) {
  p.validate(table);
  require_not_one(s);
  const ext_cplx z = to_ext(s.s());
  const GbKernel<ext_cplx> kernel(p.N, p.mu_max + 1, table);
  const auto terms = kernel.terms(z);
  const TailCut cut = choose_cut(terms.tail, p.mu_max, p.tail);
  ZetaValue out;
  out.value = to_cplx(assemble_zeta(terms, z, p.N, cut.included));
  const double scale = static_cast<double>(abs(z * terms.n_pow_neg_s * ext_real(p.N)));
  out.error_estimate = kTailSafety * scale * cut.omitted_abs + 2.0 * kRoundoff * std::abs(out.value);
  out.quality_ok = out.error_estimate <= p.tol;
  out.tail_terms = cut.included;
  out.params = p;
  return out;
}

EvalParams auto_params(ComplexPoint s, double tol, const BernoulliTable& table) {
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
  require_not_one(s);
  const cplx z = s.s();
  const int max_mu = table.max_mu();
  if (max_mu < 2) throw CapacityError("Bernoulli table too shallow for automatic parameters");

  const int n0 = std::max(10, static_cast<int>(std::ceil(2.0 * (std::fabs(s.Y) + std::fabs(s.X) + 1.0))));
  double best = std::numeric_limits<double>::infinity();
  for (int N = n0; N <= (1 << 22); N *= 2) {
    const double floor = rounding_floor(s, N);
    const GbKernel<cplx> kernel(N, max_mu, table);
    const auto terms = kernel.terms(z);
    const double scale = std::abs(z * terms.n_pow_neg_s * static_cast<double>(N));
    for (int m = 1; m < max_mu; ++m) {
      const double current = scale * std::abs(terms.tail[m - 1]);
      const double next = scale * std::abs(terms.tail[m]);
      if (next >= current && current > 0.0) {  // smallest term reached before meeting tol
        best = std::min(best, kTailSafety * current + floor);
        break;
      }
      const double estimate = kTailSafety * next + floor;
      best = std::min(best, estimate);
      if (estimate <= tol) return EvalParams{N, m, tol, TailPolicy::smallest_term};
    }
    if (floor > tol && s.X < 1.0) break;  // floor only grows with N here
  }
  std::ostringstream msg;
  msg.precision(3);
  msg << "tolerance " << tol << " unreachable in binary64 at s = " << point_text(s) << "; achievable ~" << best;
  throw CapacityError(msg.str());
}

cplx q_of(ComplexPoint s) {
  require_not_zero(s, "Q");
  if (s.X == 1.0 && s.Y == 0.0) throw PoleError("Q pole at s = 1");
  const cplx z = s.s();
  return 1.0 / (z * (1.0 - z));
}

ext_cplx q_of(const ext_cplx& s) {
  if (s == ext_cplx(0) || s == ext_cplx(1)) throw PoleError("Q pole at s in {0, 1}");
  return ext_cplx(1) / (s * (ext_cplx(1) - s));
}

ZetaValue f_gb(ComplexPoint s, const EvalParams& p, const BernoulliTable& table) {
  p.validate(table);
  require_not_zero(s, "F_GB");
  const cplx z = s.s();
  const GbKernel<cplx> kernel(p.N, p.mu_max + 1, table);
  const auto terms = kernel.terms(z);
  const TailCut cut = choose_cut(terms.tail, p.mu_max, p.tail);

  ZetaValue out;
  out.value = assemble_fgb(terms, z, p.N, cut.included);
  const double inv_scale = 1.0 / std::abs(z * terms.n_pow_neg_s * static_cast<double>(p.N));
  out.error_estimate = kTailSafety * cut.omitted_abs + rounding_floor(s, p.N) * inv_scale;
  out.quality_ok = out.error_estimate <= p.tol;
  out.tail_terms = cut.included;
  out.params = p;
  return out;
}

double check_factor_identity(ComplexPoint s, const EvalParams& p, const BernoulliTable& table) {
  require_not_zero(s, "factor identity");
  require_not_one(s);
  const ZetaValue f = f_gb(s, p, table);
  const ZetaValue z = evaluate_zeta(s, p, table);
  const cplx sz = s.s();
  const cplx factor = std::exp((sz - 1.0) * std::log(static_cast<double>(p.N))) / sz;
  return std::abs(f.value - q_of(s) - factor * z.value);
}

ZetaValue reflect_zeta(ComplexPoint s, double tol, const BernoulliTable& table) {
  if (std::fabs(s.Y) > kReflectionMaxHeight)
    throw CapacityError("reflect_zeta: |Y| beyond " + std::to_string(kReflectionMaxHeight) +
                        " overflows binary64 factors");
  ZetaValue out;
  if (s.X == 0.0 && s.Y == 0.0) {
    // sin(pi s/2) zeta(1-s) -> -pi/2 as s -> 0.
    out.value = -0.5;
    out.error_estimate = kRoundoff;
    out.params.tol = tol;
    out.quality_ok = out.error_estimate <= tol;
    return out;
  }
  if (s.Y == 0.0 && s.X >= 1.0 && s.X == std::floor(s.X)) {
    if (s.X == 1.0) throw PoleError("zeta pole at s = 1");
    throw DomainError("reflect_zeta: removable singularity of the reflection factors at positive integer s");
  }
  const cplx z = s.s();
  const ComplexPoint mirror(1.0 - s.X, -s.Y);
  const cplx log_factor =
      z * std::log(2.0) + (z - 1.0) * std::log(std::numbers::pi) + log_gamma(cplx(mirror.X, mirror.Y));
  const cplx factor = std::exp(log_factor) * sin_half_pi(z);
  // The inner tolerance is relative to the reflection factor so tol applies to the product.
  const double inner_tol = tol / std::max(std::abs(factor), 1e-300);
  const ZetaValue inner = evaluate_zeta(mirror, std::min(inner_tol, 1.0), table);
  out.value = factor * inner.value;
  out.error_estimate = std::abs(factor) * inner.error_estimate + 64.0 * kRoundoff * std::abs(out.value);
  out.params = inner.params;
  out.tail_terms = inner.tail_terms;
  out.quality_ok = out.error_estimate <= tol;
  return out;
}

FgbFunction::FgbFunction(const EvalParams& p, const BernoulliTable& table)
    : params_((p.validate(table), p.with_tail(TailPolicy::fixed))),
      kernel_(p.N, p.mu_max, table),
      kernel_ext_(p.N, p.mu_max, table) {}

cplx FgbFunction::operator()(cplx s) const {
  if (s == cplx(0.0)) throw PoleError("F_GB pole at s = 0");
  return assemble_fgb(kernel_.terms(s), s, params_.N, params_.mu_max);
}

ext_cplx FgbFunction::operator()(const ext_cplx& s) const {
  if (s == ext_cplx(0)) throw PoleError("F_GB pole at s = 0");
  return assemble_fgb(kernel_ext_.terms(s), s, params_.N, params_.mu_max);
}

}  // namespace zgb
