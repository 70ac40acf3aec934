#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "zgb/core_numerics.hpp"
#include "zgb/errors.hpp"

using namespace zgb;

namespace {

// Akiyama-Tanigawa: B_0..B_n with B_1 = +1/2.
std::vector<rational> akiyama_tanigawa(int n) {
  std::vector<rational> a(static_cast<std::size_t>(n + 1));
  std::vector<rational> out;
  for (int m = 0; m <= n; ++m) {
    a[m] = rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = rational(j) * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("bernoulli examples") {
  CHECK(bernoulli(0) == rational(1));
  CHECK(bernoulli(2) == rational(1, 6));
  CHECK(bernoulli(4) == rational(-1, 30));
  CHECK(bernoulli(12) == rational(-691, 2730));
}

TEST_CASE("bernoulli index errors") {
  CHECK_THROWS_AS(bernoulli(3), DomainError);
  CHECK_THROWS_AS(bernoulli(-2), DomainError);
  CHECK_THROWS_AS(bernoulli(66), CapacityError);
  CHECK_THROWS_AS(BernoulliTable(64).value(1), DomainError);
}

TEST_CASE("bernoulli table matches Akiyama-Tanigawa bit for bit") {
  const auto oracle = akiyama_tanigawa(100);
  const BernoulliTable deep(100);
  for (int n = 0; n <= 100; n += 2) {
    CAPTURE(n);
    CHECK(deep.exact(n) == oracle[n]);
    if (n <= 64) CHECK(bernoulli(n) == oracle[n]);
  }
}

TEST_CASE("bernoulli signs alternate") {
  const BernoulliTable& t = default_bernoulli_table();
  CHECK(t.exact(0) == 1);
  for (int n = 2; n <= t.max_index(); n += 2) {
    CAPTURE(n);
    CHECK((t.exact(n) > 0) == ((n / 2) % 2 == 1));
  }
}

TEST_CASE("bernoulli renderings") {
  const BernoulliTable& t = default_bernoulli_table();
  CHECK(t.value(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK(t.over_factorial(1) == doctest::Approx(1.0 / 12.0).epsilon(1e-16));
  CHECK(t.over_factorial(2) == doctest::Approx(-1.0 / 720.0).epsilon(1e-16));
  CHECK(std::fabs(static_cast<double>(t.over_factorial_ext(3) - ext_real(1) / ext_real(30240))) < 1e-30);
  CHECK(t.max_mu() == 32);
}

TEST_CASE("recurrence self-check detects corruption") {
  CHECK(default_bernoulli_table().satisfies_recurrence());
  std::vector<rational> values;
  for (int n = 0; n <= 20; n += 2) values.push_back(bernoulli(n));
  CHECK(BernoulliTable::from_values(values).satisfies_recurrence());
  values[3] += rational(1, 1000000);
  CHECK_FALSE(BernoulliTable::from_values(values).satisfies_recurrence());
}

TEST_CASE("rising_product examples") {
  CHECK(rising_product(cplx(2.0), 1) == cplx(1.0));
  CHECK(rising_product(cplx(1.0), 2) == cplx(6.0));
  CHECK(rising_product(cplx(0.0, 1.0), 2) == cplx(1.0, 3.0));
}

TEST_CASE("rising_product recurrence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const cplx s(u(rng), u(rng));
    for (int mu = 1; mu < 10; ++mu) {
      const cplx lhs = rising_product(s, mu + 1);
      const cplx rhs = rising_product(s, mu) * (s + double(2 * mu - 1)) * (s + double(2 * mu));
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
    }
  }
}

TEST_CASE("log_gamma examples") {
  CHECK(std::abs(log_gamma(cplx(1.0))) < 1e-15);
  CHECK(std::abs(log_gamma(cplx(0.5)) - 0.5723649429247001) < 1e-13);
  CHECK(std::abs(log_gamma(cplx(5.0)) - std::log(24.0)) < 1e-13);
}

TEST_CASE("log_gamma poles") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) CHECK_THROWS_AS(log_gamma(cplx(x)), PoleError);
  CHECK_NOTHROW(log_gamma(cplx(-2.5)));
}

TEST_CASE("log_gamma on the positive axis agrees with lgamma") {
  for (double x = 0.05; x < 90.0; x *= 1.37) {
    CAPTURE(x);
    const cplx v = log_gamma(cplx(x));
    CHECK(std::fabs(v.real() - std::lgamma(x)) <= 1e-12 * std::max(1.0, std::fabs(std::lgamma(x))));
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("log_gamma modulus on the critical line") {
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  for (double t = -40.0; t <= 40.0; t += 3.7) {
    CAPTURE(t);
    const double expected = 0.5 * (std::log(std::numbers::pi) - (std::numbers::pi * std::fabs(t) + std::log1p(std::exp(-2 * std::numbers::pi * std::fabs(t))) - std::log(2.0)));
    CHECK(std::fabs(log_gamma(cplx(0.5, t)).real() - expected) < 1e-11);
  }
}

TEST_CASE("log_gamma recurrence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.5, 20.0), phi(-std::numbers::pi, std::numbers::pi);
  int tested = 0;
  while (tested < 100) {
    const cplx s = std::polar(r(rng), phi(rng));
    if (std::fabs(s.imag()) < 0.2 && s.real() < 0.5) continue;  // away from poles
    const cplx ratio = std::exp(log_gamma(s + 1.0) - log_gamma(s));
    CAPTURE(s);
    CHECK(std::abs(ratio - s) <= 1e-10 * std::abs(s));
    ++tested;
  }
}

TEST_CASE("log_gamma conjugation and reflection") {
  for (double x : {-3.3, -0.7, 0.25, 2.0, 11.5}) {
    for (double y : {0.3, 4.0, 25.0}) {
      const cplx z(x, y);
      CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(log_gamma(z))) < 1e-12);
      if (y < 10.0) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const cplx prod = std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(std::numbers::pi * z);
        CHECK(std::abs(prod - std::numbers::pi) < 1e-9 * std::numbers::pi);
      }
    }
  }
}

TEST_CASE("sin_half_pi") {
  for (double x : {-4.0, -2.0, 0.0, 2.0, 6.0, 100.0}) CHECK(sin_half_pi(cplx(x)) == cplx(0.0));
  CHECK(sin_half_pi(cplx(1.0)) == cplx(1.0));
  CHECK(sin_half_pi(cplx(-1.0)) == cplx(-1.0));
  for (double x : {-3.3, 0.4, 1.7}) {
    for (double y : {-5.0, 0.0, 2.5}) {
      const cplx z(x, y);
      const cplx ref = std::sin(std::numbers::pi * z / 2.0);
      CHECK(std::abs(sin_half_pi(z) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }
}
