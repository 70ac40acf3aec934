#include "zgb/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "zgb/errors.hpp"
#include "zgb/null_conditions.hpp"

namespace zgb::cli {

const char* to_string(PrecisionMode m) { return m == PrecisionMode::standard ? "standard" : "extended"; }

namespace {

template <class T>
T config_value(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

void apply_config_json(RunConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "precision_mode") {
      const auto mode = config_value<std::string>(j, "precision_mode");
      if (mode == "standard")
        config.precision_mode = PrecisionMode::standard;
      else if (mode == "extended")
        config.precision_mode = PrecisionMode::extended;
      else
        throw UsageError("precision_mode must be 'standard' or 'extended', got '" + mode + "'");
    } else if (key == "tol") {
      config.tol = config_value<double>(j, "tol");
    } else if (key == "bernoulli_depth") {
      config.bernoulli_depth = config_value<int>(j, "bernoulli_depth");
    } else if (key == "quadrature_nodes") {
      config.quadrature_nodes = config_value<int>(j, "quadrature_nodes");
    } else if (key == "max_nodes") {
      config.max_nodes = config_value<int>(j, "max_nodes");
    } else if (key == "output_dir") {
      config.output_dir = config_value<std::string>(j, "output_dir");
    } else if (key == "seed") {
      config.seed = config_value<std::uint64_t>(j, "seed");
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config_json(config, j);
}

void apply_config_env(RunConfig& config, const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return;
  if (value[first] != '{') {
    apply_config_file(config, value);
    return;
  }
  try {
    apply_config_json(config, nlohmann::json::parse(value));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("ZGB_CONFIG is not valid JSON: ") + e.what());
  }
}

RunConfig load_config(const std::string& file_path, const char* env_value) {
  RunConfig config;
  if (!file_path.empty()) apply_config_file(config, file_path);
  if (env_value != nullptr && *env_value != '\0') apply_config_env(config, env_value);
  return config;
}

void validate(const RunConfig& config) {
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) throw UsageError("tol must be positive and finite");
  if (config.bernoulli_depth < 4 || config.bernoulli_depth % 2 != 0 || config.bernoulli_depth > 1000)
    throw UsageError("bernoulli_depth must be even and in [4, 1000]");
  if (config.quadrature_nodes < 0) throw UsageError("quadrature_nodes must be non-negative");
  if (config.max_nodes < 8) throw UsageError("max_nodes must be at least 8");
  if (config.output_dir.empty()) throw UsageError("output_dir must not be empty");
}

ordered_json to_json(const RunConfig& config) {
  ordered_json j;
  j["precision_mode"] = to_string(config.precision_mode);
  j["tol"] = config.tol;
  j["bernoulli_depth"] = config.bernoulli_depth;
  j["quadrature_nodes"] = config.quadrature_nodes;
  j["max_nodes"] = config.max_nodes;
  j["seed"] = config.seed;
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_value(std::ostringstream& os, const ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ordered_json(key).dump() << ": ";
        dump_value(os, value, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_value(os, value, indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_number(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& j) {
  std::ostringstream os;
  dump_value(os, j, 0);
  os << "\n";
  return os.str();
}

namespace {

double parse_real(const std::string& text, const std::string& whole) {
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double value = 0.0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
    throw UsageError("cannot parse complex literal '" + whole + "'");
  return value;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw UsageError("empty complex literal");
  if (t.back() != 'i' && t.back() != 'j') return {parse_real(t, text), 0.0};

  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw UsageError("format must be 'json' or 'csv', got '" + text + "'");
}

namespace {

ordered_json complex_json(cplx z) {
  ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

ordered_json params_json(const EvalParams& p) {
  ordered_json j;
  j["N"] = p.N;
  j["mu_max"] = p.mu_max;
  j["tol"] = p.tol;
  j["tail"] = p.tail == TailPolicy::fixed ? "fixed" : "smallest_term";
  return j;
}

ordered_json header(const char* command, const RunConfig& config) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = to_json(config);
  return j;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  return row + "\n";
}

std::string summary(const char* command, const std::vector<OutputFile>& files, ordered_json extra = {}) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["files"] = ordered_json::array();
  for (const auto& f : files) j["files"].push_back(f.name);
  if (extra.is_object())
    for (const auto& [k, v] : extra.items()) j[k] = v;
  return dump_json(j);
}

Precision sampling_precision(const RunConfig& config) {
  return config.precision_mode == PrecisionMode::extended ? Precision::extended : Precision::automatic;
}

struct Extraction {
  LaurentSeries series;
  bool has_params = false;
  EvalParams params;
};

Extraction extract_for(const CoeffsRequest& request, const RunConfig& config, const BernoulliTable& table) {
  ExtractionOptions options;
  Extraction out;
  if (request.function == "fgb") {
    annulus_of(request.rho);
    out.has_params = true;
    out.params = auto_params(ComplexPoint(0.5, request.rho), config.tol, table).with_tail(TailPolicy::fixed);
    options = fgb_extraction_options();
  } else if (request.function != "q") {
    throw UsageError("function must be 'fgb' or 'q', got '" + request.function + "'");
  }
  if (request.window >= 0) {
    options.m_pos = options.m_neg = request.window;
    options.adaptive = false;
  }
  options.nodes = config.quadrature_nodes;
  options.max_nodes = config.max_nodes;
  options.precision = sampling_precision(config);
  const CircleFunction f = out.has_params ? CircleFunction::fgb(out.params, table) : CircleFunction::q();
  out.series = extract_series(f, request.rho, options);
  return out;
}

ordered_json series_metadata(const CoeffsRequest& request, const Extraction& ex) {
  ordered_json m;
  m["function"] = request.function;
  m["rho"] = ex.series.rho_used();
  m["annulus"] = to_string(ex.series.annulus());
  m["nodes"] = ex.series.metadata().nodes;
  m["precision"] = to_string(ex.series.metadata().precision);
  m["stability_delta"] = ex.series.metadata().stability_delta;
  m["min_exponent"] = ex.series.min_exponent();
  m["max_exponent"] = ex.series.max_exponent();
  if (ex.has_params) m["params"] = params_json(ex.params);
  return m;
}

ordered_json coeff_rows(const LaurentSeries& series) {
  ordered_json rows = ordered_json::array();
  for (const auto& [k, c] : series.coeffs()) {
    ordered_json r;
    r["k"] = k;
    r["re"] = static_cast<double>(c.real());
    r["im"] = static_cast<double>(c.imag());
    rows.push_back(r);
  }
  return rows;
}

std::string csv_metadata(const ordered_json& meta) {
  std::string out;
  for (const auto& [k, v] : meta.items()) {
    if (v.is_object()) {
      for (const auto& [k2, v2] : v.items())
        out += "# " + k + "." + k2 + "=" + (v2.is_number_float() ? format_number(v2.get<double>()) : v2.is_string() ? v2.get<std::string>() : v2.dump()) + "\n";
    } else {
      out += "# " + k + "=" + (v.is_number_float() ? format_number(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  }
  return out;
}

}  // namespace

CommandResult cmd_eval(const std::string& literal, const RunConfig& config) {
  validate(config);
  const ComplexPoint s(parse_complex(literal));
  const BernoulliTable table(config.bernoulli_depth);
  ZetaValue z;
  if (config.precision_mode == PrecisionMode::extended)
    z = evaluate_zeta_extended(s, auto_params(s, config.tol, table), table);
  else
    z = evaluate_zeta(s, config.tol, table);

  ordered_json j = header("eval", config);
  j["s"] = complex_json(s.s());
  j["value"] = complex_json(z.value);
  j["abs"] = std::abs(z.value);
  j["error_estimate"] = z.error_estimate;
  j["quality_ok"] = z.quality_ok;
  j["params_used"] = params_json(z.params);
  j["params_used"]["tail_terms"] = z.tail_terms;
  CommandResult r;
  r.stdout_text = dump_json(j);
  return r;
}

CommandResult cmd_coeffs(const CoeffsRequest& request, const RunConfig& config) {
  validate(config);
  const BernoulliTable table(config.bernoulli_depth);
  const Extraction ex = extract_for(request, config, table);
  const ordered_json meta = series_metadata(request, ex);

  OutputFile file;
  if (request.format == OutputFormat::json) {
    ordered_json j = header("coeffs", config);
    j["metadata"] = meta;
    j["coefficients"] = coeff_rows(ex.series);
    file = {"coeffs_" + request.function + ".json", dump_json(j)};
  } else {
    std::string csv = "# schema_version=" + std::to_string(kSchemaVersion) + "\n" + csv_metadata(meta);
    csv += csv_row({"k", "re", "im"});
    for (const auto& [k, c] : ex.series.coeffs())
      csv += csv_row({std::to_string(k), format_number(static_cast<double>(c.real())),
                      format_number(static_cast<double>(c.imag()))});
    file = {"coeffs_" + request.function + ".csv", csv};
  }
  CommandResult r;
  r.files.push_back(file);
  r.stdout_text = summary("coeffs", r.files);
  return r;
}

CommandResult cmd_decompose(const CoeffsRequest& request, const RunConfig& config) {
  validate(config);
  const BernoulliTable table(config.bernoulli_depth);
  const Extraction ex = extract_for(request, config, table);
  const ParityPair parts = split_parity(ex.series);
  const ordered_json meta = series_metadata(request, ex);

  OutputFile file;
  if (request.format == OutputFormat::json) {
    ordered_json j = header("decompose", config);
    j["metadata"] = meta;
    j["symmetric"] = coeff_rows(parts.even);
    j["antisymmetric"] = coeff_rows(parts.odd);
    file = {"decompose_" + request.function + ".json", dump_json(j)};
  } else {
    std::string csv = "# schema_version=" + std::to_string(kSchemaVersion) + "\n" + csv_metadata(meta);
    csv += csv_row({"k", "component", "re", "im"});
    for (const auto& [k, c] : ex.series.coeffs())
      csv += csv_row({std::to_string(k), k % 2 == 0 ? "symmetric" : "antisymmetric",
                      format_number(static_cast<double>(c.real())), format_number(static_cast<double>(c.imag()))});
    file = {"decompose_" + request.function + ".csv", csv};
  }
  CommandResult r;
  r.files.push_back(file);
  r.stdout_text = summary("decompose", r.files);
  return r;
}

namespace {

ordered_json report_json(const ResidualReport& rep) {
  ordered_json j;
  j["rho"] = rep.probe.rho;
  j["alpha"] = rep.probe.alpha;
  j["canonical"] = rep.probe.canonical;
  j["epsilon"] = rep.probe.epsilon();
  j["eta"] = rep.probe.eta();
  j["r_as_real"] = rep.r_as_real;
  j["r_as_imag"] = rep.r_as_imag;
  j["r_sym"] = rep.r_sym;
  j["r_total"] = rep.r_total;
  j["scale"] = rep.scale;
  j["zeta_error"] = rep.zeta_error;
  j["params"] = params_json(rep.params);
  j["nodes"] = rep.nodes;
  j["min_exponent"] = rep.min_exponent;
  j["max_exponent"] = rep.max_exponent;
  j["precision"] = to_string(rep.precision);
  return j;
}

}  // namespace

CommandResult cmd_scan(double rho_min, double rho_max, double step, const RunConfig& config) {
  validate(config);
  if (!(rho_min > 0.0) || !(rho_min < rho_max)) {
    std::ostringstream os;
    os << "scan range needs 0 < rho_min < rho_max, got " << rho_min << " " << rho_max;
    throw UsageError(os.str());
  }
  if (!(step > 0.0)) throw UsageError("scan step must be positive");
  const auto candidates = scan_critical_line(rho_min, rho_max, step, config.tol);

  ordered_json j = header("scan", config);
  j["rho_min"] = rho_min;
  j["rho_max"] = rho_max;
  j["step"] = step;
  j["candidates"] = ordered_json::array();
  std::string csv = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  csv += csv_row({"rho", "bracket_lo", "bracket_hi", "oracle_ordinate", "odd_residual", "even_residual", "r_as_real",
                  "r_as_imag", "r_sym", "r_total", "step_warning"});
  for (const auto& c : candidates) {
    ordered_json e;
    e["rho"] = c.rho;
    e["bracket"] = {c.bracket.first, c.bracket.second};
    e["oracle_ordinate"] = c.oracle_ordinate;
    e["odd_residual"] = c.odd_residual;
    e["even_residual"] = c.even_residual;
    e["step_warning"] = c.step_warning;
    e["residuals"] = report_json(c.residuals);
    j["candidates"].push_back(e);
    csv += csv_row({format_number(c.rho), format_number(c.bracket.first), format_number(c.bracket.second),
                    format_number(c.oracle_ordinate), format_number(c.odd_residual), format_number(c.even_residual),
                    format_number(c.residuals.r_as_real), format_number(c.residuals.r_as_imag),
                    format_number(c.residuals.r_sym), format_number(c.residuals.r_total),
                    c.step_warning ? "1" : "0"});
  }
  CommandResult r;
  r.files.push_back({"scan.json", dump_json(j)});
  r.files.push_back({"scan.csv", csv});
  ordered_json extra;
  extra["candidates"] = candidates.size();
  r.stdout_text = summary("scan", r.files, extra);
  return r;
}

CommandResult cmd_quartet_map(double rho, int alpha_count, const RunConfig& config) {
  validate(config);
  const auto reports = quartet_grid_scan(rho, alpha_count, config.tol);

  ordered_json j = header("quartet-map", config);
  j["rho"] = rho;
  j["alpha_count"] = alpha_count;
  j["rows"] = ordered_json::array();
  std::string csv = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  csv += csv_row({"alpha", "epsilon", "eta", "canonical", "r_as_real", "r_as_imag", "r_sym", "r_total"});
  for (const auto& rep : reports) {
    j["rows"].push_back(report_json(rep));
    csv += csv_row({format_number(rep.probe.alpha), format_number(rep.probe.epsilon()),
                    format_number(rep.probe.eta()), rep.probe.canonical ? "1" : "0", format_number(rep.r_as_real),
                    format_number(rep.r_as_imag), format_number(rep.r_sym), format_number(rep.r_total)});
  }
  CommandResult r;
  r.files.push_back({"quartet_map.json", dump_json(j)});
  r.files.push_back({"quartet_map.csv", csv});
  r.stdout_text = summary("quartet-map", r.files);
  return r;
}

CommandResult cmd_figures(double rho, int points, const RunConfig& config) {
  validate(config);
  if (annulus_of(rho) != AnnulusClass::outer)
    throw ParameterError("figure series converges only in the outer annulus rho > 1/2");
  const GammaCircle circle(rho, points);
  const double ratio = 1.0 / (4.0 * rho * rho);
  const int terms = std::clamp(static_cast<int>(std::ceil(std::log(1e-20) / std::log(ratio))), 1, 100000);

  std::string csv = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  csv += "# rho=" + format_number(rho) + "\n# terms=" + std::to_string(terms) + "\n";
  csv += csv_row({"theta", "re", "im", "abs", "re_closed", "im_closed", "abs_closed", "agreement"});
  for (int j = 0; j < points; ++j) {
    const cplx z = rho * circle.unit(j);
    const cplx w = 1.0 / (4.0 * z * z);
    cplx series(0.0), power(1.0);
    for (int m = 1; m <= terms; ++m) {
      power *= w;
      series += power;
    }
    const cplx s = 0.5 + z;
    const cplx closed = 0.25 / (s * (s - 1.0));
    csv += csv_row({format_number(circle.theta(j)), format_number(series.real()), format_number(series.imag()),
                    format_number(std::abs(series)), format_number(closed.real()), format_number(closed.imag()),
                    format_number(std::abs(closed)), format_number(std::abs(series - closed))});
  }
  CommandResult r;
  r.files.push_back({"figures.csv", csv});
  r.stdout_text = summary("figures", r.files);
  return r;
}

namespace {

struct Check {
  std::string id;
  bool passed = true;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int points = 0;
  std::string note;
};

class CheckRun {
 public:
  CheckRun(std::string id, double tolerance) {
    check_.id = std::move(id);
    check_.tolerance = tolerance;
  }
  void add(double residual) {
    ++check_.points;
    if (!(residual <= check_.tolerance)) check_.passed = false;
    if (std::isnan(residual) || residual > check_.max_residual) check_.max_residual = residual;
  }
  void fail(const std::string& note) {
    check_.passed = false;
    check_.note = note;
  }
  Check done() const { return check_; }

 private:
  Check check_;
};

template <class Body>
Check guarded(const std::string& id, double tol, Body body) {
  CheckRun run(id, tol);
  try {
    body(run);
  } catch (const std::exception& e) {
    run.fail(e.what());
  }
  return run.done();
}

BernoulliTable faulty_table(int depth) {
  const BernoulliTable clean(depth);
  std::vector<rational> values;
  for (int i = 0; i <= clean.max_index(); i += 2) values.push_back(clean.exact(i));
  values[2] *= rational(11, 10);  // B_4 off by 10%
  return BernoulliTable::from_values(values);
}

std::vector<Check> identity_suite(const BernoulliTable& table, std::mt19937_64& rng) {
  std::vector<Check> out;
  out.push_back(guarded("identity.bernoulli_recurrence", 0.0, [&](CheckRun& run) {
    run.add(table.satisfies_recurrence() ? 0.0 : 1.0);
  }));
  out.push_back(guarded("identity.factor", 1e-10, [&](CheckRun& run) {
    std::uniform_real_distribution<double> eps(-0.49, 0.49), eta(-30.0, 30.0);
    for (int i = 0; i < 200;) {
      const ComplexPoint s(0.5 + eps(rng), eta(rng));
      if (std::abs(s.shifted()) > 30.0 || std::abs(s.s()) < 1e-3 || std::abs(s.s() - 1.0) < 1e-3) continue;
      run.add(check_factor_identity(s, auto_params(s, kDefaultTolerance, table), table));
      ++i;
    }
  }));
  return out;
}

std::vector<Check> symmetry_suite(const BernoulliTable& table, std::mt19937_64& rng) {
  std::vector<Check> out;
  std::uniform_real_distribution<double> x(-3.0, 4.0), y(-40.0, 40.0);
  out.push_back(guarded("symmetry.q_reflection", 1e-14, [&](CheckRun& run) {
    for (int i = 0; i < 200; ++i) {
      const ComplexPoint s(x(rng), y(rng));
      const cplx a = q_of(s), b = q_of(s.reflected());
      run.add(std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  }));
  out.push_back(guarded("symmetry.q_conjugation", 1e-14, [&](CheckRun& run) {
    for (int i = 0; i < 200; ++i) {
      const ComplexPoint s(x(rng), y(rng));
      run.add(std::abs(q_of(s.conj()) - std::conj(q_of(s))) / std::max(1.0, std::abs(q_of(s))));
    }
  }));
  out.push_back(guarded("symmetry.zeta_conjugation", 1e-12, [&](CheckRun& run) {
    std::uniform_real_distribution<double> zx(-1.0, 3.0), zy(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
      const ComplexPoint s(zx(rng), zy(rng));
      const EvalParams p = auto_params(s, 1e-10, table);
      const cplx a = evaluate_zeta(s, p, table).value;
      run.add(std::abs(evaluate_zeta(s.conj(), p, table).value - std::conj(a)) / std::max(1.0, std::abs(a)));
    }
  }));
  return out;
}

std::vector<Check> orthogonality_suite(const RunConfig& config, const BernoulliTable& table) {
  std::vector<Check> out;
  const Precision precision = sampling_precision(config);
  out.push_back(guarded("orthogonality.fgb_rho2", 1e-10, [&](CheckRun& run) {
    const EvalParams p = auto_params(ComplexPoint(0.5, 2.0), config.tol, table).with_tail(TailPolicy::fixed);
    const CircleFunction f = CircleFunction::fgb(p, table);
    const GammaCircle circle(2.0, 256);
    for (int m = 0; m <= 3; ++m) {
      const auto o = parity_orthogonality_check(f, circle, m, precision);
      run.add(o.antisym_even);
      run.add(o.sym_odd);
    }
  }));
  out.push_back(guarded("orthogonality.q_rho1", 1e-12, [&](CheckRun& run) {
    const GammaCircle circle(1.0, 256);
    for (int m = 0; m <= 3; ++m) {
      const auto o = parity_orthogonality_check(CircleFunction::q(), circle, m, precision);
      run.add(o.antisym_even);
      run.add(o.sym_odd);
      run.add(std::abs(o.antisym_odd));
    }
  }));
  out.push_back(guarded("orthogonality.q_closed_form", 1e-10, [&](CheckRun& run) {
    for (double rho : {0.25, 1.0, 2.0}) {
      ExtractionOptions o;
      o.precision = precision;
      o.max_nodes = config.max_nodes;
      const LaurentSeries s = extract_series(CircleFunction::q(), rho, o);
      for (int k = s.min_exponent(); k <= s.max_exponent(); ++k)
        run.add(std::abs(s.coeff(k) - q_coeffs_closed_form(s.annulus(), k)) /
                std::max(1.0, std::fabs(q_coeffs_closed_form(s.annulus(), k))));
    }
  }));
  return out;
}

std::vector<Check> oracle_suite(const BernoulliTable& table, std::mt19937_64& rng) {
  std::vector<Check> out;
  out.push_back(guarded("oracle.dirichlet", 1e-10, [&](CheckRun& run) {
    std::uniform_real_distribution<double> x(2.0, 6.0), y(-20.0, 20.0);
    for (int i = 0; i < 20; ++i) {
      const ComplexPoint s(x(rng), y(rng));
      run.add(std::abs(evaluate_zeta(s, kDefaultTolerance, table).value - dirichlet_oracle(s, 200000)));
    }
  }));
  out.push_back(guarded("oracle.reflection", 1e-8, [&](CheckRun& run) {
    std::uniform_real_distribution<double> x(-0.5, 1.5), y(1.0, 30.0);
    for (int i = 0; i < 20; ++i) {
      const ComplexPoint s(x(rng), y(rng));
      run.add(std::abs(evaluate_zeta(s, kDefaultTolerance, table).value -
                       reflect_zeta(s, kDefaultTolerance, table).value));
    }
  }));
  return out;
}

}  // namespace

CommandResult cmd_verify(const std::string& suite, Fault fault, const RunConfig& config) {
  validate(config);
  static const std::vector<std::string> kSuites = {"identity", "symmetry", "orthogonality", "oracle"};
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw UsageError("unknown verify suite '" + suite + "'");

  const BernoulliTable table =
      fault == Fault::bernoulli ? faulty_table(config.bernoulli_depth) : BernoulliTable(config.bernoulli_depth);
  std::vector<Check> checks;
  for (const auto& name : kSuites) {
    if (suite != "all" && suite != name) continue;
    std::mt19937_64 rng(config.seed);
    std::vector<Check> part;
    if (name == "identity") part = identity_suite(table, rng);
    if (name == "symmetry") part = symmetry_suite(table, rng);
    if (name == "orthogonality") part = orthogonality_suite(config, table);
    if (name == "oracle") part = oracle_suite(table, rng);
    checks.insert(checks.end(), part.begin(), part.end());
  }

  ordered_json j = header("verify", config);
  j["suite"] = suite;
  j["fault"] = fault == Fault::bernoulli ? "bernoulli" : "none";
  j["checks"] = ordered_json::array();
  ordered_json failing = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["id"] = c.id;
    e["passed"] = c.passed;
    e["points"] = c.points;
    e["max_residual"] = c.max_residual;
    e["tolerance"] = c.tolerance;
    if (!c.note.empty()) e["note"] = c.note;
    j["checks"].push_back(e);
    if (!c.passed) failing.push_back(c.id);
  }
  j["passed"] = failing.empty();
  j["failing"] = failing;

  CommandResult r;
  r.exit_code = failing.empty() ? 0 : 1;
  r.files.push_back({"verify_" + suite + ".json", dump_json(j)});
  ordered_json extra;
  extra["passed"] = failing.empty();
  extra["failing"] = failing;
  r.stdout_text = summary("verify", r.files, extra);
  return r;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const DomainError*>(&e)) return 3;
  if (dynamic_cast<const ParameterError*>(&e)) return 4;
  return 1;
}

void write_outputs(const CommandResult& result, const std::string& dir) {
  if (result.files.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& f : result.files) {
    const auto path = std::filesystem::path(dir) / f.name;
    std::ofstream out(path, std::ios::binary);
    out << f.content;
    if (!out) throw Error("cannot write " + path.string());
  }
}

}  // namespace zgb::cli
