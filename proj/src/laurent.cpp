#include "zgb/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "zgb/errors.hpp"

namespace zgb {

const char* to_string(AnnulusClass c) { return c == AnnulusClass::inner ? "inner" : "outer"; }

const char* to_string(Precision p) {
  switch (p) {
    case Precision::automatic: return "automatic";
    case Precision::binary64: return "binary64";
    case Precision::extended: return "extended";
  }
  return "?";
}

AnnulusClass annulus_of(double rho, double exclusion) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("circle radius must be positive and finite");
  if (std::fabs(rho - 0.5) <= exclusion) {
    std::ostringstream os;
    os << "circle radius " << rho << " lies within " << exclusion << " of 1/2 and touches the poles at s = 0, 1";
    throw ParameterError(os.str());
  }
  return rho < 0.5 ? AnnulusClass::inner : AnnulusClass::outer;
}

namespace {

int positive_mod(long long a, int k) {
  const long long r = a % k;
  return static_cast<int>(r < 0 ? r + k : r);
}

// e^{2 pi i j / K}, exact at quarter turns.
cplx unit_root(int j, int k) {
  j = positive_mod(j, k);
  if ((4LL * j) % k == 0) {
    switch ((4LL * j) / k) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
  return std::polar(1.0, theta);
}

ext_cplx unit_root_ext(int j, int k) {
  j = positive_mod(j, k);
  if ((4LL * j) % k == 0) return to_ext(unit_root(j, k));
  const ext_real theta = ext_real(2) * scalar_traits<ext_cplx>::pi() * ext_real(j) / ext_real(k);
  return ext_cplx(cos(theta), sin(theta));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(long long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

Precision resolve(Precision requested, const CircleFunction& f) {
  if (requested == Precision::automatic) return f.eval_ext ? Precision::extended : Precision::binary64;
  if (requested == Precision::extended && !f.eval_ext)
    throw ParameterError("function '" + f.name + "' has no extended-precision evaluator");
  return requested;
}

double unit_roundoff(Precision p) {
  return p == Precision::extended ? scalar_traits<ext_cplx>::unit_roundoff : scalar_traits<cplx>::unit_roundoff;
}

ext_cplx evaluate_node(const CircleFunction& f, double rho, int j, int k, Precision precision) {
  try {
    if (precision == Precision::extended) {
      const ext_cplx s = ext_cplx(ext_real(0.5)) + ext_real(rho) * unit_root_ext(j, k);
      return f.eval_ext(s);
    }
    const cplx s = cplx(0.5, 0.0) + rho * unit_root(j, k);
    const cplx v = f.eval(s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite value");
    return to_ext(v);
  } catch (const Error& e) {
    const double theta = 2.0 * std::numbers::pi * j / k;
    std::ostringstream os;
    os << "sampling '" << f.name << "' failed at theta_" << j << " = " << theta << " (rho = " << rho << "): " << e.what();
    throw SamplingError(os.str(), theta);
  }
}

// Samples on a grid that can be refined by powers of two, reusing existing nodes.
class CircleSampler {
 public:
  CircleSampler(const CircleFunction& f, double rho, Precision precision)
      : f_(&f), rho_(rho), precision_(precision) {}

  void refine_to(int k) {
    if (k == static_cast<int>(values_.size())) return;
    std::vector<ext_cplx> next(static_cast<std::size_t>(k));
    const int old = static_cast<int>(values_.size());
    const int stride = old == 0 ? 0 : k / old;
    for (int j = 0; j < k; ++j) {
      if (stride != 0 && j % stride == 0)
        next[j] = values_[j / stride];
      else
        next[j] = evaluate_node(*f_, rho_, j, k, precision_);
    }
    values_ = std::move(next);
  }

  const std::vector<ext_cplx>& values() const { return values_; }

 private:
  const CircleFunction* f_;
  double rho_;
  Precision precision_;
  std::vector<ext_cplx> values_;
};

// In-place forward transform X_k = sum_j a_j e^{-2 pi i jk/K}, K a power of two.
void fft(std::vector<ext_cplx>& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<ext_cplx> twiddle(static_cast<std::size_t>(n / 2));
  for (int j = 0; j < n / 2; ++j) twiddle[j] = unit_root_ext(-j, n);
  for (int len = 2; len <= n; len <<= 1) {
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int j = 0; j < len / 2; ++j) {
        const ext_cplx u = a[i + j];
        const ext_cplx v = a[i + j + len / 2] * twiddle[j * step];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// (1/K) sum_j f_j e^{-2 pi i jk/K} for every k in [0, K) (power of two) or for the window.
std::vector<ext_cplx> normalized_modes(const std::vector<ext_cplx>& samples) {
  std::vector<ext_cplx> modes = samples;
  fft(modes);
  const ext_real inv = ext_real(1) / ext_real(static_cast<int>(samples.size()));
  for (auto& m : modes) m *= inv;
  return modes;
}

ext_cplx direct_mode(const std::vector<ext_cplx>& samples, int k, const std::vector<ext_cplx>& roots) {
  const int n = static_cast<int>(samples.size());
  ext_cplx sum(0);
  for (int j = 0; j < n; ++j) sum += samples[j] * roots[positive_mod(-static_cast<long long>(j) * k, n)];
  return sum / ext_real(n);
}

std::map<int, ext_cplx> window_coefficients(const std::vector<ext_cplx>& samples, double rho, int m_pos,
                                            int m_neg) {
  const int n = static_cast<int>(samples.size());
  std::map<int, ext_cplx> coeffs;
  const ext_real r(rho);
  const ext_real inv_r = ext_real(1) / r;
  if (is_power_of_two(n)) {
    const auto modes = normalized_modes(samples);
    ext_real scale(1);
    for (int k = 0; k <= m_pos; ++k, scale *= inv_r) coeffs[k] = modes[k] * scale;
    scale = r;
    for (int k = 1; k <= m_neg; ++k, scale *= r) coeffs[-k] = modes[positive_mod(-k, n)] * scale;
    return coeffs;
  }
  std::vector<ext_cplx> roots(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) roots[j] = unit_root_ext(j, n);
  for (int k = -m_neg; k <= m_pos; ++k) coeffs[k] = direct_mode(samples, k, roots) * pow(r, -k);
  return coeffs;
}

void check_aliasing_guard(int nodes, int m_pos, int m_neg) {
  if (m_pos < 0 || m_neg < 0) throw ParameterError("window bounds must be non-negative");
  if (static_cast<long long>(nodes) < 4LL * std::max(m_pos, m_neg) + 4) {
    std::ostringstream os;
    os << "window [" << -m_neg << ", " << m_pos << "] violates the aliasing guard K >= 4 max(M) + 4 with K = "
       << nodes;
    throw ParameterError(os.str());
  }
}

}  // namespace

GammaCircle::GammaCircle(double rho, int nodes, double exclusion)
    : rho_(rho), nodes_(nodes), annulus_(annulus_of(rho, exclusion)) {
  if (nodes < 4 || nodes % 2 != 0) throw ParameterError("circle node count must be even and at least 4");
}

double GammaCircle::theta(int j) const { return 2.0 * std::numbers::pi * j / nodes_; }
cplx GammaCircle::unit(int j) const { return unit_root(j, nodes_); }
ext_cplx GammaCircle::unit_ext(int j) const { return unit_root_ext(j, nodes_); }

QuartetPoint QuartetPoint::canonical_at(double rho) { return {rho, std::numbers::pi / 2.0, true}; }

double QuartetPoint::epsilon() const { return canonical ? 0.0 : rho * std::cos(alpha); }
double QuartetPoint::eta() const { return canonical ? rho : rho * std::sin(alpha); }
cplx QuartetPoint::shifted() const { return {epsilon(), eta()}; }

ext_real QuartetPoint::alpha_ext() const {
  return canonical ? scalar_traits<ext_cplx>::pi() / ext_real(2) : ext_real(alpha);
}

ext_cplx QuartetPoint::shifted_ext() const {
  if (canonical) return ext_cplx(ext_real(0), ext_real(rho));
  const ext_real a = alpha_ext();
  return ext_cplx(ext_real(rho) * cos(a), ext_real(rho) * sin(a));
}

bool QuartetPoint::strict_offline() const {
  if (canonical || !(rho > 0.5)) return false;
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return c > 0.0 && c < 1.0 / (2.0 * rho) && s > std::sqrt(1.0 - 1.0 / (4.0 * rho * rho)) && s < 1.0;
}

bool QuartetPoint::admissible() const {
  if (!(rho > 0.5)) return false;
  if (canonical) return true;
  return alpha > std::acos(1.0 / (2.0 * rho)) && alpha <= std::numbers::pi / 2.0;
}

CircleFunction CircleFunction::q() {
  return {"q", [](cplx s) { return q_of(ComplexPoint(s)); }, [](const ext_cplx& s) { return q_of(s); }};
}

CircleFunction CircleFunction::fgb(const EvalParams& p, const BernoulliTable& table) {
  auto fn = std::make_shared<const FgbFunction>(p, table);
  return {"fgb", [fn](cplx s) { return (*fn)(s); }, [fn](const ext_cplx& s) { return (*fn)(s); }};
}

CircleFunction CircleFunction::constant(cplx value) {
  const ext_cplx ext = to_ext(value);
  return {"constant", [value](cplx) { return value; }, [ext](const ext_cplx&) { return ext; }};
}

CircleFunction CircleFunction::figure_closed_form() {
  return {"figure",
          [](cplx s) {
            if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("figure series pole at s in {0, 1}");
            return 0.25 / (s * (s - 1.0));
          },
          [](const ext_cplx& s) {
            if (s == ext_cplx(0) || s == ext_cplx(1)) throw PoleError("figure series pole at s in {0, 1}");
            return ext_cplx(ext_real(0.25)) / (s * (s - ext_real(1)));
          }};
}

Samples sample_circle(const CircleFunction& f, const GammaCircle& circle, Precision precision) {
  Samples out;
  out.rho = circle.rho();
  out.precision = resolve(precision, f);
  out.values.reserve(static_cast<std::size_t>(circle.nodes()));
  for (int j = 0; j < circle.nodes(); ++j)
    out.values.push_back(evaluate_node(f, circle.rho(), j, circle.nodes(), out.precision));
  return out;
}

LaurentSeries::LaurentSeries(double rho_used, std::map<int, ext_cplx> coeffs, SeriesMetadata meta)
    : rho_used_(rho_used), annulus_(annulus_of(rho_used)), coeffs_(std::move(coeffs)), meta_(std::move(meta)) {}

int LaurentSeries::min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentSeries::max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

ext_cplx LaurentSeries::coeff_ext(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? ext_cplx(0) : it->second;
}

cplx LaurentSeries::coeff(int k) const { return to_cplx(coeff_ext(k)); }

LaurentSeries laurent_coeffs(const Samples& samples, int m_pos, int m_neg) {
  const int nodes = static_cast<int>(samples.values.size());
  check_aliasing_guard(nodes, m_pos, m_neg);
  SeriesMetadata meta;
  meta.nodes = nodes;
  meta.precision = samples.precision;
  return LaurentSeries(samples.rho, window_coefficients(samples.values, samples.rho, m_pos, m_neg), meta);
}

LaurentSeries laurent_coeffs(const std::vector<cplx>& samples, double rho, int m_pos, int m_neg) {
  Samples s;
  s.rho = rho;
  s.precision = Precision::binary64;
  for (const cplx& v : samples) s.values.push_back(to_ext(v));
  return laurent_coeffs(s, m_pos, m_neg);
}

double q_coeffs_closed_form(AnnulusClass annulus, int k) {
  if (k % 2 != 0) return 0.0;
  if (annulus == AnnulusClass::inner) return k >= 0 ? std::ldexp(1.0, k + 2) : 0.0;  // 4^{k/2+1}
  return k <= -2 ? -std::ldexp(1.0, k + 2) : 0.0;                                   // -4^{k/2+1}
}

ParityPair split_parity(const LaurentSeries& series) {
  if (series.empty() && series.rho_used() == 0.0) return {};
  std::map<int, ext_cplx> even, odd;
  for (const auto& [k, c] : series.coeffs()) (k % 2 == 0 ? even : odd)[k] = c;
  return {LaurentSeries(series.rho_used(), std::move(even), series.metadata()),
          LaurentSeries(series.rho_used(), std::move(odd), series.metadata())};
}

ext_cplx eval_series(const LaurentSeries& series, const ext_cplx& s_prime) {
  if (series.empty()) return ext_cplx(0);
  const double r = static_cast<double>(abs(s_prime));
  if (r == 0.0) {
    if (series.min_exponent() < 0) throw PoleError("series with negative exponents evaluated at s' = 0");
    if (series.annulus() != AnnulusClass::inner)
      throw ParameterError("s' = 0 lies outside the outer annulus of validity");
    return series.coeff_ext(0);
  }
  if (std::fabs(r - 0.5) <= kPoleExclusion || annulus_of(r) != series.annulus()) {
    std::ostringstream os;
    os << "|s'| = " << r << " is outside the " << to_string(series.annulus()) << " annulus of the series";
    throw ParameterError(os.str());
  }
  ext_cplx sum(0);
  ext_cplx power(1);
  for (int k = 0; k <= series.max_exponent(); ++k, power *= s_prime) sum += series.coeff_ext(k) * power;
  const ext_cplx inv = ext_cplx(1) / s_prime;
  power = inv;
  for (int k = -1; k >= series.min_exponent(); --k, power *= inv) sum += series.coeff_ext(k) * power;
  return sum;
}

cplx eval_series(const LaurentSeries& series, cplx s_prime) { return to_cplx(eval_series(series, to_ext(s_prime))); }

OrthogonalityResult parity_orthogonality_check(const CircleFunction& f, const GammaCircle& circle, int m,
                                               Precision precision) {
  const Samples samples = sample_circle(f, circle, precision);
  const int n = circle.nodes();
  const int half = n / 2;
  const ext_real r(circle.rho());
  const int even_mode = 2 * m;
  const int odd_mode = 2 * m + 1;

  ext_cplx as_even(0), s_odd(0), s_even(0), as_odd(0);
  const ext_real two(2);
  for (int j = 0; j < n; ++j) {
    const ext_cplx& here = samples.values[j];
    const ext_cplx& opposite = samples.values[(j + half) % n];
    const ext_cplx sym = (here + opposite) / two;
    const ext_cplx anti = (here - opposite) / two;
    const ext_cplx w_even = unit_root_ext(-static_cast<long long>(even_mode) * j % n, n);
    const ext_cplx w_odd = unit_root_ext(-static_cast<long long>(odd_mode) * j % n, n);
    as_even += anti * w_even;
    s_even += sym * w_even;
    s_odd += sym * w_odd;
    as_odd += anti * w_odd;
  }
  const ext_real inv_n = ext_real(1) / ext_real(n);
  const ext_real even_scale = pow(r, -even_mode) * inv_n;
  const ext_real odd_scale = pow(r, -odd_mode) * inv_n;

  OrthogonalityResult out;
  out.antisym_even = static_cast<double>(abs(as_even * even_scale));
  out.sym_odd = static_cast<double>(abs(s_odd * odd_scale));
  out.sym_even = to_cplx(s_even * even_scale);
  out.antisym_odd = to_cplx(as_odd * odd_scale);
  return out;
}

ExtractionOptions fgb_extraction_options() {
  ExtractionOptions o;
  o.adaptive = true;
  return o;
}

LaurentSeries extract_series(const CircleFunction& f, double rho, const ExtractionOptions& options) {
  annulus_of(rho);
  const Precision precision = resolve(options.precision, f);
  const double roundoff = unit_roundoff(precision);
  int m_pos = options.m_pos;
  int m_neg = options.m_neg;
  if (m_pos < 0 || m_neg < 0) throw ParameterError("window bounds must be non-negative");

  int nodes = options.nodes > 0 ? options.nodes : std::max(8, next_power_of_two(8LL * std::max({m_pos, m_neg, 1})));
  if (options.adaptive && !is_power_of_two(nodes))
    throw ParameterError("adaptive extraction needs a power-of-two node count");
  check_aliasing_guard(nodes, m_pos, m_neg);

  auto grow = [&](int wanted) {
    if (wanted > options.max_nodes) {
      std::ostringstream os;
      os << "extraction of '" << f.name << "' at rho = " << rho << " needs " << wanted << " nodes (limit "
         << options.max_nodes << ")";
      throw CapacityError(os.str());
    }
    return wanted;
  };

  CircleSampler sampler(f, rho, precision);
  for (;;) {
    sampler.refine_to(nodes);
    if (options.adaptive) {
      const auto modes = normalized_modes(sampler.values());
      const int half = nodes / 2;
      ext_real peak(0);
      for (const auto& mode : modes) peak = std::max(peak, ext_real(abs(mode)));
      const double threshold = std::max(options.amplitude_tol, 64.0 * roundoff * static_cast<double>(peak));
      int top = 0, bottom = 0;
      for (int k = 1; k < half; ++k) {
        if (abs(modes[k]) >= threshold) top = k;
        if (abs(modes[nodes - k]) >= threshold) bottom = k;
      }
      m_pos = top + 2;
      m_neg = bottom + 2;
      const int needed = next_power_of_two(8LL * std::max(m_pos, m_neg));
      if (needed > nodes) {
        nodes = grow(needed);
        continue;
      }
    }
    const auto coarse = window_coefficients(sampler.values(), rho, m_pos, m_neg);
    const int doubled = grow(2 * nodes);
    sampler.refine_to(doubled);
    const auto fine = window_coefficients(sampler.values(), rho, m_pos, m_neg);
    double delta = 0.0;
    for (const auto& [k, c] : fine) {
      const double scale = std::max(1.0, static_cast<double>(abs(c)));
      delta = std::max(delta, static_cast<double>(abs(c - coarse.at(k))) / scale);
    }
    if (delta < options.stability_tol) {
      SeriesMetadata meta;
      meta.source = f.name;
      meta.nodes = doubled;
      meta.precision = precision;
      meta.stability_delta = delta;
      return LaurentSeries(rho, fine, meta);
    }
    nodes = doubled;
  }
}

}  // namespace zgb
