#include "zgb/core_numerics.hpp"

#include <cmath>
#include <string>

#include "zgb/errors.hpp"

namespace zgb {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(int n, int k) {
  cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

ext_real to_ext_real(const rational& q) {
  return ext_real(boost::multiprecision::numerator(q).str()) /
         ext_real(boost::multiprecision::denominator(q).str());
}

// All B_n for n = 0..max_index from sum_{k=0}^{n} C(n+1,k) B_k = 0.
std::vector<rational> bernoulli_by_recurrence(int max_index) {
  std::vector<rational> all(static_cast<std::size_t>(max_index) + 1);
  all[0] = 1;
  for (int n = 1; n <= max_index; ++n) {
    if (n > 1 && n % 2 == 1) {
      all[n] = 0;
      continue;
    }
    rational acc = 0;
    for (int k = 0; k < n; ++k) acc += rational(binomial(n + 1, k)) * all[k];
    all[n] = -acc / (n + 1);
  }
  std::vector<rational> even;
  for (int n = 0; n <= max_index; n += 2) even.push_back(all[n]);
  return even;
}

}  // namespace

BernoulliTable::BernoulliTable(int max_index) : BernoulliTable(max_index, {}) {}

BernoulliTable::BernoulliTable(int max_index, std::vector<rational> even_values) : max_index_(max_index) {
  if (max_index < 0 || max_index % 2 != 0)
    throw ParameterError("Bernoulli table depth must be an even non-negative integer, got " +
                         std::to_string(max_index));
  even_ = even_values.empty() ? bernoulli_by_recurrence(max_index) : std::move(even_values);
  for (std::size_t i = 0; i < even_.size(); ++i) {
    const int index = static_cast<int>(2 * i);
    const rational scaled = even_[i] / rational(factorial(index));
    even_double_.push_back(even_[i].convert_to<double>());
    over_fact_.push_back(scaled.convert_to<double>());
    over_fact_ext_.push_back(to_ext_real(scaled));
  }
}

BernoulliTable BernoulliTable::from_values(std::vector<rational> even_values) {
  if (even_values.empty()) throw ParameterError("Bernoulli table needs at least B_0");
  const int max_index = static_cast<int>(2 * (even_values.size() - 1));
  return BernoulliTable(max_index, std::move(even_values));
}

void BernoulliTable::check_index(int index) const {
  if (index < 0 || index % 2 != 0)
    throw DomainError("Bernoulli index must be even and non-negative, got " + std::to_string(index));
  if (index > max_index_)
    throw CapacityError("Bernoulli index " + std::to_string(index) + " exceeds table depth " +
                        std::to_string(max_index_));
}

const rational& BernoulliTable::exact(int index) const {
  check_index(index);
  return even_[index / 2];
}

double BernoulliTable::value(int index) const {
  check_index(index);
  return even_double_[index / 2];
}

double BernoulliTable::over_factorial(int mu) const {
  check_index(2 * mu);
  return over_fact_[mu];
}

const ext_real& BernoulliTable::over_factorial_ext(int mu) const {
  check_index(2 * mu);
  return over_fact_ext_[mu];
}

bool BernoulliTable::satisfies_recurrence() const {
  if (even_.empty() || even_[0] != 1) return false;
  auto b = [&](int k) -> rational {
    if (k == 1) return rational(-1, 2);
    if (k % 2 == 1) return 0;
    return even_[k / 2];
  };
  for (int n = 2; n <= max_index_; n += 2) {
    rational acc = 0;
    for (int k = 0; k <= n; ++k) acc += rational(binomial(n + 1, k)) * b(k);
    if (acc != 0) return false;
  }
  return true;
}

const BernoulliTable& default_bernoulli_table() {
  static const BernoulliTable table(kDefaultBernoulliDepth);
  return table;
}

rational bernoulli(int index) { return default_bernoulli_table().exact(index); }

namespace {

// Stirling series for log Gamma(w), valid for |w| >= 15 with Re w >= 1.
cplx stirling(cplx w) {
  const auto& table = default_bernoulli_table();
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  cplx sum = (w - 0.5) * std::log(w) - w + half_log_two_pi;
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx power = inv;
  for (int k = 1; k <= 10; ++k) {
    sum += table.value(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return sum;
}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);  // exact
  if (r == std::floor(r)) return 0.0;
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double x) {
  double r = std::fabs(std::fmod(x, 2.0));
  if (r == 0.5 || r == 1.5) return 0.0;
  if (r > 1.0) r = 2.0 - r;
  if (r > 0.5) return -std::sin(std::numbers::pi * (r - 0.5));
  return std::cos(std::numbers::pi * r);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma pole at non-positive integer " + std::to_string(z.real()));
  cplx shift = 0.0;
  cplx w = z;
  while (w.real() < 1.0 || std::abs(w) < 15.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shift;
}

cplx sin_half_pi(cplx z) {
  const double a = 0.5 * z.real();
  const double b = 0.5 * std::numbers::pi * z.imag();
  return {sin_pi(a) * std::cosh(b), cos_pi(a) * std::sinh(b)};
}

}  // namespace zgb
