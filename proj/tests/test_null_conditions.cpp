#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "zgb/errors.hpp"
#include "zgb/null_conditions.hpp"

using namespace zgb;

namespace {

const nlohmann::json& golden() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(ZGB_GOLDEN_DIR) + "/anchors.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

double first_zero() { return golden()["zero_ordinates"][0].get<double>(); }

const ProbeSeries& at_first_zero() {
  static const ProbeSeries ps = extract_probe_series(first_zero());
  return ps;
}

const std::vector<ZeroCandidate>& desk_scan() {
  static const std::vector<ZeroCandidate> c = scan_critical_line(5.0, 30.0, 0.05);
  return c;
}

// plain bisection on hardy_z, independent of the scanner
double bisect(double a, double b) {
  double fa = hardy_z(a);
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = hardy_z(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("antisym_residual examples") {
  const ProbeSeries& ps = at_first_zero();
  const auto [c, s] = antisym_residual(QuartetPoint::canonical_at(first_zero()), ps.parity.odd);
  CHECK(std::fabs(c) < 1e-6);
  CHECK(std::fabs(s) < 1e-6);
  CHECK(std::fabs(c) < 1e-30);  // cos of odd multiples of pi/2

  const auto zero = antisym_residual(QuartetPoint::canonical_at(3.0), LaurentSeries(3.0, {}));
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);

  CHECK_THROWS_AS(antisym_residual(QuartetPoint::canonical_at(0.3), ps.parity.odd), ParameterError);
}

TEST_CASE("full_system_residual matches antisym_residual") {
  std::mt19937_64 rng(3);
  int probes = 0;
  for (double rho : {2.0, 7.5, first_zero()}) {
    const ProbeSeries& ps = rho == first_zero() ? at_first_zero() : extract_probe_series(rho);
    const double lo = std::acos(1.0 / (2.0 * rho));
    std::uniform_real_distribution<double> alpha(lo, std::numbers::pi / 2);
    for (int i = 0; i < 34; ++i, ++probes) {
      const QuartetPoint q = QuartetPoint::at(rho, alpha(rng));
      REQUIRE(q.admissible());
      const auto a = antisym_residual(q, ps.parity.odd);
      const auto f = full_system_residual(q, ps.parity.odd);
      CHECK(std::fabs(a.first - f.first) < 1e-12);
      CHECK(std::fabs(a.second - f.second) < 1e-12);
    }
  }
  CHECK(probes >= 100);
}

TEST_CASE("full_system_residual constraints") {
  const ProbeSeries& ps = at_first_zero();
  CHECK_THROWS_AS(full_system_residual(QuartetPoint::at(first_zero(), -std::numbers::pi / 2), ps.parity.odd),
                  DomainError);
  CHECK_THROWS_AS(full_system_residual(QuartetPoint::at(first_zero(), 0.3), ps.parity.odd), DomainError);
  const auto canon = full_system_residual(QuartetPoint::canonical_at(first_zero()), ps.parity.odd);
  CHECK(std::fabs(canon.first) < 1e-10);
}

TEST_CASE("critical-line odd residual") {
  CHECK(std::fabs(critical_line_odd_residual(first_zero(), at_first_zero().parity.odd)) < 1e-6);
  const ProbeSeries ten = extract_probe_series(10.0);
  const double r = critical_line_odd_residual(10.0, ten.parity.odd);
  CHECK(std::fabs(r) > 1e-3);
  const auto& anchor = golden()["critical_line"][0];
  CHECK(r == doctest::Approx(anchor["odd_residual"].get<double>()).epsilon(1e-6));
  CHECK(critical_line_odd_residual(10.0, LaurentSeries(10.0, {})) == 0.0);
  CHECK_THROWS_AS(critical_line_odd_residual(0.25, ten.parity.odd), ParameterError);
}

TEST_CASE("critical-line even residual") {
  CHECK(critical_line_even_residual(first_zero(), at_first_zero().parity.even) < 1e-6);
  CHECK(std::fabs(critical_line_even_sine_sum(first_zero(), at_first_zero().parity.even)) < 1e-30);
  CHECK_THROWS_AS(critical_line_even_residual(0.0, LaurentSeries()), DomainError);

  // right-hand side at rho = 1
  CHECK(1.0 / (0.25 + 1.0) == doctest::Approx(0.8));
  CHECK(q_critical_line_outer_sum(1.0, 60) == doctest::Approx(0.8).epsilon(1e-15));
  ExtractionOptions o;
  const LaurentSeries q = extract_series(CircleFunction::q(), 1.0, o);
  CHECK(std::abs(eval_series(q, cplx(0.0, 1.0)) - cplx(0.8)) < 1e-12);
  for (double rho : {0.75, 3.0, 20.0})
    CHECK(q_critical_line_outer_sum(rho, 200) == doctest::Approx(1.0 / (0.25 + rho * rho)).epsilon(1e-14));
}

TEST_CASE("hardy_z examples") {
  CHECK(hardy_z(0.0) == doctest::Approx(-1.4603545088095868).epsilon(1e-10));
  CHECK(hardy_z(14.0) * hardy_z(15.0) < 0.0);
  for (double t = 0.5; t < 60.0; t += 1.3) CHECK(std::fabs(hardy_z(-t) - hardy_z(t)) < 1e-10);
  CHECK_THROWS_AS(hardy_z(1000.5), CapacityError);
  CHECK_NOTHROW(hardy_z(999.0));
}

TEST_CASE("hardy_z is real across the scan range") {
  for (double t = 5.0; t <= 30.0; t += 0.25) CHECK_NOTHROW(hardy_z(t));
}

TEST_CASE("scan_critical_line finds the first three zeros") {
  const auto& c = desk_scan();
  REQUIRE(c.size() == 3);
  const auto& golden_zeros = golden()["zero_ordinates"];
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(i);
    const double g = golden_zeros[i].get<double>();
    CHECK(std::fabs(c[i].rho - g) < 1e-6);
    CHECK(std::fabs(c[i].rho - c[i].oracle_ordinate) < kBisectionTol);
    CHECK(std::fabs(c[i].rho - bisect(c[i].bracket.first, c[i].bracket.second)) < 1e-6);
    CHECK(hardy_z(c[i].bracket.first) * hardy_z(c[i].bracket.second) < 0.0);
    CHECK(c[i].bracket.second - c[i].bracket.first <= 0.05 + 1e-12);
    CHECK_FALSE(c[i].step_warning);
    if (i > 0) CHECK(c[i - 1].rho < c[i].rho);
  }
  CHECK(std::fabs(c[0].rho - 14.134725) < 1e-6);
  CHECK(std::fabs(c[1].rho - 21.022040) < 1e-6);
  CHECK(std::fabs(c[2].rho - 25.010858) < 1e-6);
}

TEST_CASE("residuals at candidates") {
  for (const auto& z : desk_scan()) {
    CAPTURE(z.rho);
    CHECK(std::fabs(z.odd_residual) < 1e-5);
    CHECK(z.even_residual < 1e-5);
    CHECK(std::hypot(z.residuals.r_as_real, z.residuals.r_as_imag) < 1e-6);
    CHECK(z.residuals.r_sym < 1e-6);
    CHECK(z.residuals.probe.canonical);
  }
}

TEST_CASE("scan edge cases") {
  CHECK(scan_critical_line(2.0, 5.0, 0.05).empty());
  CHECK_THROWS_AS(scan_critical_line(30.0, 5.0, 0.05), ParameterError);
  CHECK_THROWS_AS(scan_critical_line(5.0, 30.0, 0.0), ParameterError);
  CHECK_THROWS_AS(scan_critical_line(0.0, 30.0, 0.05), ParameterError);
}

TEST_CASE("coarse steps are flagged, never dropped") {
  const double step = 5.0;
  const auto c = scan_critical_line(5.0, 30.0, step);
  int changes = 0;
  for (double a = 5.0; a + step <= 30.0 + 1e-9; a += step)
    if (hardy_z(a) * hardy_z(a + step) < 0.0) ++changes;
  CHECK(static_cast<int>(c.size()) == changes);
  for (const auto& z : c) CHECK(z.step_warning);
}

TEST_CASE("conditions hold only near oracle zeros") {
  std::vector<double> grid;
  for (double r = 5.0; r <= 30.0; r += 2.5) grid.push_back(r);
  for (const auto& z : desk_scan()) grid.push_back(z.rho);
  for (double rho : grid) {
    const ProbeSeries ps = extract_probe_series(rho);
    const double r48 = std::fabs(critical_line_odd_residual(rho, ps.parity.odd));
    const double r49 = critical_line_even_residual(rho, ps.parity.even);
    if (r48 < 1e-7 && r49 < 1e-7) {
      double nearest = 1e9;
      for (const auto& z : desk_scan()) nearest = std::min(nearest, std::fabs(z.rho - rho));
      CAPTURE(rho);
      CHECK(nearest < 1e-4);
    }
  }
}

TEST_CASE("critical-line anchors") {
  for (const auto& anchor : golden()["critical_line"]) {
    const double rho = anchor["rho"].get<double>();
    const ProbeSeries ps = extract_probe_series(rho);
    const double r48 = critical_line_odd_residual(rho, ps.parity.odd);
    const double r49 = critical_line_even_residual(rho, ps.parity.even);
    CAPTURE(rho);
    CHECK(anchor["floor"].get<double>() >= 1e-3);
    CHECK(std::hypot(r48, r49) > anchor["floor"].get<double>());
    CHECK(r48 == doctest::Approx(anchor["odd_residual"].get<double>()).epsilon(1e-6));
    CHECK(r49 == doctest::Approx(anchor["even_residual"].get<double>()).epsilon(1e-6));
  }
}

TEST_CASE("quartet grid at the first zero") {
  const auto reports = quartet_grid_scan(first_zero(), 12, at_first_zero());
  REQUIRE(reports.size() == 12);
  const ResidualReport& canon = reports.back();
  CHECK(canon.probe.canonical);
  CHECK(canon.r_total < 1e-6);
  const double ratio = golden()["quartet"]["offline_to_canonical_ratio"].get<double>();
  for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
    CAPTURE(reports[i].probe.alpha);
    CHECK(reports[i].probe.strict_offline());
    CHECK(reports[i].r_total > ratio * canon.r_total);
  }
}

TEST_CASE("quartet grid away from zeros") {
  const auto reports = quartet_grid_scan(10.0, 16);
  const double floor = golden()["quartet"]["rho10_floor"].get<double>();
  for (const auto& r : reports) {
    CHECK(r.r_total >= 1e-3);
    CHECK(r.r_total > floor);
  }
}

TEST_CASE("quartet grid respects the admissible range") {
  for (double rho : {0.75, 3.0, 25.0}) {
    const auto grid = quartet_alpha_grid(rho, 9);
    CHECK(grid.size() == 9);
    for (const auto& q : grid) {
      CHECK(q.admissible());
      CHECK((q.strict_offline() || q.canonical));
      const double c = std::cos(q.alpha);
      if (!q.canonical) CHECK((c > 0.0 && c < 1.0 / (2.0 * rho)));
    }
    CHECK(grid.back().canonical);
  }
  CHECK_THROWS_AS(quartet_grid_scan(0.5, 4), DomainError);
  CHECK_THROWS_AS(quartet_grid_scan(0.3, 4), DomainError);
}

TEST_CASE("residual report invariants") {
  const ProbeSeries ps = extract_probe_series(7.5);
  for (const auto& r : quartet_grid_scan(7.5, 10, ps)) {
    CHECK(r.r_as_real >= 0.0);
    CHECK(r.r_as_imag >= 0.0);
    CHECK(r.r_sym >= 0.0);
    CHECK(r.r_total >= 0.0);
    const double bound = r.scale * (std::hypot(r.r_as_real, r.r_as_imag) + r.r_sym) + r.zeta_error;
    CHECK(r.r_total <= bound * (1.0 + 1e-9) + 1e-12);
    CHECK(r.params.tail == TailPolicy::fixed);
    CHECK(r.nodes == ps.series.metadata().nodes);
  }
}

TEST_CASE("separation at zeros") {
  for (const auto& z : desk_scan()) {
    const ProbeSeries ps = extract_probe_series(z.rho);
    const ext_cplx s_prime = QuartetPoint::canonical_at(z.rho).shifted_ext();
    const double fas = static_cast<double>(abs(eval_series(ps.parity.odd, s_prime)));
    const double fs_q = static_cast<double>(
        abs(eval_series(ps.parity.even, s_prime) - q_of(ext_cplx(ext_real(0.5)) + s_prime)));
    CAPTURE(z.rho);
    CHECK(fas < 1e-6);
    CHECK(fs_q < 1e-6);
  }
}
