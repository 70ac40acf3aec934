// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>
#include <sys/wait.h>

#include <json.hpp>

#include "zgb/cli_io.hpp"
#include "zgb/laurent.hpp"
#include "zgb/null_conditions.hpp"
#include "zgb/zeta_gb.hpp"

using namespace zgb;
namespace fs = std::filesystem;

namespace tol {
constexpr double dirichlet = 1e-10;
constexpr double dirichlet_seconds = 10.0;
constexpr long dirichlet_terms = 200000;
constexpr double reflection = 1e-8;
constexpr double reflection_seconds = 30.0;
constexpr double factor = 1e-10;
constexpr double q_closed = 1e-10;
constexpr double q_odd = 1e-12;
constexpr double rho_independence = 1e-9;
constexpr double reality = 1e-10;
constexpr double orthogonality = 1e-10;
constexpr double zero_location = 1e-6;
constexpr double scan_seconds = 120.0;
constexpr double separation = 1e-6;
constexpr double line_residual = 1e-5;
constexpr double floor_minimum = 1e-3;
constexpr double figures = 1e-12;
}  // namespace tol

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const nlohmann::json& golden() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(ZGB_GOLDEN_DIR) + "/anchors.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_imag(const LaurentSeries& s) {
  double m = 0.0;
  for (const auto& [k, c] : s.coeffs()) m = std::max(m, static_cast<double>(abs(c.imag())));
  return m;
}

ExtractionOptions window(int m) {
  ExtractionOptions o;
  o.m_pos = o.m_neg = m;
  return o;
}

// sign changes of hardy_z on the scan grid, refined by plain bisection
std::vector<double> hardy_bisection(double lo, double hi, double step) {
  std::vector<double> roots;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i < n; ++i) {
    double a = lo + i * step, b = lo + (i + 1) * step;
    double fa = hardy_z(a);
    if (fa * hardy_z(b) >= 0.0) continue;
    while (b - a > 1e-12) {
      const double m = 0.5 * (a + b);
      const double fm = hardy_z(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

const std::vector<ZeroCandidate>& candidates() {
  static const std::vector<ZeroCandidate> c = scan_critical_line(5.0, 30.0, 0.05);
  return c;
}

Outcome dirichlet_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 10; ++j, ++points) {
      const ComplexPoint s(2.0 + i, -20.0 + 40.0 * j / 9.0);
      const cplx z = evaluate_zeta(s).value;
      worst = std::max(worst, std::abs(z - dirichlet_oracle(s, tol::dirichlet_terms)));
    }
  }
  const double t = seconds_since(t0);
  return {worst < tol::dirichlet && t < tol::dirichlet_seconds && points == 50,
          std::to_string(points) + " points, max " + fmt(worst) + " (tol " + fmt(tol::dirichlet) + "), " + fmt(t) +
              " s"};
}

Outcome reflection_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j, ++points) {
      const ComplexPoint s(-0.5 + 2.0 * i / 9.0, 1.0 + 29.0 * j / 9.0);
      worst = std::max(worst, std::abs(evaluate_zeta(s).value - reflect_zeta(s).value));
    }
  }
  const double t = seconds_since(t0);
  return {worst < tol::reflection && t < tol::reflection_seconds && points == 100,
          std::to_string(points) + " points, max " + fmt(worst) + " (tol " + fmt(tol::reflection) + "), " + fmt(t) +
              " s"};
}

Outcome factor_identity() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> eps(-0.5, 0.5), u(-1.0, 1.0);
  double worst = 0.0;
  int points = 0;
  while (points < 1000) {
    const double e = eps(rng);
    if (e == -0.5) continue;
    const double eta = u(rng) * std::sqrt(30.0 * 30.0 - e * e);
    const ComplexPoint s(0.5 + e, eta);
    worst = std::max(worst, check_factor_identity(s, auto_params(s, kDefaultTolerance)));
    ++points;
  }
  return {worst < tol::factor, "1000 strip points, max " + fmt(worst) + " (tol " + fmt(tol::factor) + ")"};
}

Outcome q_coefficients() {
  constexpr int m = 40;
  double closed = 0.0, odd = 0.0, indep = 0.0;
  std::map<double, LaurentSeries> series;
  for (double rho : {0.25, 1.0, 2.0}) {
    const LaurentSeries s = extract_series(CircleFunction::q(), rho, window(m));
    for (int k = -m; k <= m; ++k) {
      const cplx c = s.coeff(k);
      const double expected = q_coeffs_closed_form(s.annulus(), k);
      closed = std::max(closed, std::abs(c - expected));
      if (k % 2 != 0) odd = std::max(odd, std::abs(c));
    }
    series.emplace(rho, s);
  }
  const LaurentSeries inner2 = extract_series(CircleFunction::q(), 0.4, window(m));
  for (int k = -m; k <= m; ++k) {
    indep = std::max(indep, std::abs(series.at(1.0).coeff(k) - series.at(2.0).coeff(k)));
    indep = std::max(indep, std::abs(series.at(0.25).coeff(k) - inner2.coeff(k)));
  }
  return {closed < tol::q_closed && odd < tol::q_odd && indep < tol::rho_independence,
          "closed-form " + fmt(closed) + ", odd " + fmt(odd) + ", rho-independence " + fmt(indep)};
}

Outcome reality_and_parity() {
  double imag = 0.0, ortho = 0.0;
  for (double rho : {1.0, 5.0, 15.0}) {
    const EvalParams p = auto_params(ComplexPoint(0.5, rho), kDefaultTolerance).with_tail(TailPolicy::fixed);
    const CircleFunction f = CircleFunction::fgb(p);
    const LaurentSeries fs = extract_series(f, rho, fgb_extraction_options());
    const LaurentSeries qs = extract_series(CircleFunction::q(), rho, window(40));
    imag = std::max({imag, max_imag(fs), max_imag(qs)});
    const GammaCircle fc(rho, fs.metadata().nodes);
    const GammaCircle qc(rho, qs.metadata().nodes);
    for (int m = 0; m <= 3; ++m) {
      const auto a = parity_orthogonality_check(f, fc, m);
      const auto b = parity_orthogonality_check(CircleFunction::q(), qc, m);
      ortho = std::max({ortho, a.antisym_even, a.sym_odd, b.antisym_even, b.sym_odd});
    }
  }
  return {imag < tol::reality && ortho < tol::orthogonality,
          "max |Im c_k| " + fmt(imag) + ", orthogonality " + fmt(ortho)};
}

Outcome zero_location() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& c = candidates();
  const double t = seconds_since(t0);
  const auto oracle = hardy_bisection(5.0, 30.0, 0.05);
  const std::vector<double> expected = {14.134725, 21.022040, 25.010858};
  bool ok = c.size() == 3 && oracle.size() == 3 && t < tol::scan_seconds;
  double worst = 0.0;
  std::string found;
  for (std::size_t i = 0; ok && i < 3; ++i) {
    worst = std::max(worst, std::fabs(c[i].rho - oracle[i]));
    worst = std::max(worst, std::fabs(c[i].rho - golden()["zero_ordinates"][i].get<double>()));
    ok = ok && std::fabs(c[i].rho - expected[i]) < 5e-7 + tol::zero_location;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f ", c[i].rho);
    found += buf;
  }
  ok = ok && worst < tol::zero_location;
  return {ok, std::to_string(c.size()) + " candidates " + found + "max dev " + fmt(worst) + ", " + fmt(t) + " s"};
}

Outcome separation() {
  if (candidates().empty()) return {false, "no candidates"};
  double fas = 0.0, fsq = 0.0;
  for (const auto& z : candidates()) {
    const ProbeSeries ps = extract_probe_series(z.rho);
    const ext_cplx sp = QuartetPoint::canonical_at(z.rho).shifted_ext();
    fas = std::max(fas, static_cast<double>(abs(eval_series(ps.parity.odd, sp))));
    fsq = std::max(fsq, static_cast<double>(abs(eval_series(ps.parity.even, sp) - q_of(ext_cplx(ext_real(0.5)) + sp))));
  }
  return {fas < tol::separation && fsq < tol::separation,
          "max |F^AS| " + fmt(fas) + ", max |F^S - Q| " + fmt(fsq)};
}

Outcome line_conditions() {
  if (candidates().empty()) return {false, "no candidates"};
  double at_zero = 0.0;
  for (const auto& z : candidates()) at_zero = std::max({at_zero, std::fabs(z.odd_residual), z.even_residual});
  bool ok = at_zero < tol::line_residual;
  double margin = 1e300;
  for (const auto& anchor : golden()["critical_line"]) {
    const double rho = anchor["rho"].get<double>();
    const double floor = anchor["floor"].get<double>();
    const ProbeSeries ps = extract_probe_series(rho);
    const double joint = std::hypot(critical_line_odd_residual(rho, ps.parity.odd),
                                    critical_line_even_residual(rho, ps.parity.even));
    ok = ok && floor >= tol::floor_minimum && joint > floor;
    margin = std::min(margin, joint / floor);
  }
  return {ok, "max residual at zeros " + fmt(at_zero) + ", min off-zero/floor ratio " + fmt(margin)};
}

Outcome figure_data() {
  const cli::CommandResult r = cli::cmd_figures(1.0, 360, cli::RunConfig{});
  std::istringstream in(r.files.at(0).content);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("theta", 0) == 0) continue;
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    rows.push_back(v);
  }
  if (rows.size() != 360) return {false, std::to_string(rows.size()) + " rows"};
  double worst = 0.0;
  for (const auto& v : rows) {
    const cplx s = 0.5 + std::polar(1.0, v[0]);
    const cplx closed = 0.25 / (s * (s - 1.0));
    worst = std::max({worst, std::fabs(v[1] - closed.real()), std::fabs(v[2] - closed.imag()),
                      std::fabs(v[3] - std::abs(closed))});
  }
  const double spot0 = std::fabs(rows[0][1] - 1.0 / 3.0);
  const double spot90 = std::fabs(rows[90][1] + 0.2);
  return {worst < tol::figures && spot0 < tol::figures && spot90 < tol::figures,
          "360 rows, max " + fmt(worst) + ", Re(0) " + fmt(rows[0][1]) + ", Re(pi/2) " + fmt(rows[90][1])};
}

int run_binary(const std::string& args, const fs::path& dir) {
  const std::string cmd =
      std::string("\"") + ZGB_CLI_PATH + "\" -o \"" + dir.string() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const cli::RunConfig config;
  int compared = 0;
  bool same = true;
  for (int pass = 0; pass < 2; ++pass) {
    const auto a = pass == 0 ? cli::cmd_verify("all", cli::Fault::none, config) : cli::cmd_scan(5.0, 30.0, 0.05, config);
    const auto b = pass == 0 ? cli::cmd_verify("all", cli::Fault::none, config) : cli::cmd_scan(5.0, 30.0, 0.05, config);
    same = same && a.files.size() == b.files.size() && a.stdout_text == b.stdout_text;
    for (std::size_t i = 0; same && i < a.files.size(); ++i, ++compared)
      same = a.files[i].name == b.files[i].name && a.files[i].content == b.files[i].content;
  }

  const fs::path root = fs::temp_directory_path() / ("zgb_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  bool exits_ok = true;
  for (const char* run : {"a", "b"}) {
    exits_ok = exits_ok && run_binary("verify all", root / run) == 0;
    exits_ok = exits_ok && run_binary("scan 5 30", root / run) == 0;
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    same = same && fs::exists(other) && slurp(entry.path()) == slurp(other);
    ++compared;
  }
  fs::remove_all(root);
  return {same && exits_ok && compared >= 6,
          std::to_string(compared) + " files compared" + (exits_ok ? "" : ", binary exit code nonzero")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dirichlet_agreement", dirichlet_agreement},
      {2, "reflection_agreement", reflection_agreement},
      {3, "factor_identity", factor_identity},
      {4, "q_coefficient_oracle", q_coefficients},
      {5, "reality_and_parity", reality_and_parity},
      {6, "zero_location", zero_location},
      {7, "separation_at_zeros", separation},
      {8, "critical_line_conditions", line_conditions},
      {9, "figure_data", figure_data},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("[%s] %d %s: %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
