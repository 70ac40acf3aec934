#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "zgb/core_numerics.hpp"
#include "zgb/laurent.hpp"
#include "zgb/zeta_gb.hpp"

namespace zgb::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class PrecisionMode {
  standard,  ///< binary64 point evaluations; Laurent sampling in extended precision where available
  extended,  ///< extended precision for point evaluations as well
};

const char* to_string(PrecisionMode m);

/// Run-wide settings. Sources in increasing priority: defaults, config file, ZGB_CONFIG,
/// command-line flags.
struct RunConfig {
  PrecisionMode precision_mode = PrecisionMode::standard;
  double tol = kDefaultTolerance;
  int bernoulli_depth = kDefaultBernoulliDepth;
  int quadrature_nodes = 0;  ///< 0: smallest power of two >= 8 max(window), doubled until stable
  int max_nodes = 1 << 16;
  std::string output_dir = ".";
  std::uint64_t seed = 20240611;
};

/// Overlays the keys present in j. Unknown keys and ill-typed values raise UsageError.
void apply_config_json(RunConfig& config, const nlohmann::json& j);
/// Reads a JSON config file into config.
void apply_config_file(RunConfig& config, const std::string& path);
/// ZGB_CONFIG is inline JSON when it starts with '{', otherwise a config file path.
void apply_config_env(RunConfig& config, const std::string& value);
/// defaults <- file (if non-empty) <- env (if non-null and non-empty).
RunConfig load_config(const std::string& file_path, const char* env_value);
void validate(const RunConfig& config);
ordered_json to_json(const RunConfig& config);

/// %.17g; non-finite values render as null in JSON and as nan/inf in CSV.
std::string format_number(double x);
/// Pretty JSON with every floating-point number in %.17g and a trailing newline.
std::string dump_json(const ordered_json& j);

/// "X+Yi", "X-Yi", "X", "Yi", with optional exponent parts. Throws UsageError.
cplx parse_complex(const std::string& text);

struct OutputFile {
  std::string name;  ///< relative to RunConfig::output_dir
  std::string content;
};

struct CommandResult {
  int exit_code = 0;
  std::string stdout_text;
  std::vector<OutputFile> files;
};

enum class OutputFormat { json, csv };
OutputFormat parse_format(const std::string& text);

struct CoeffsRequest {
  std::string function = "fgb";  ///< fgb | q
  double rho = 1.0;
  int window = -1;  ///< symmetric window M; negative picks the default (adaptive for fgb, 40 for q)
  OutputFormat format = OutputFormat::json;
};

enum class Fault { none, bernoulli };

CommandResult cmd_eval(const std::string& literal, const RunConfig& config);
CommandResult cmd_coeffs(const CoeffsRequest& request, const RunConfig& config);
CommandResult cmd_decompose(const CoeffsRequest& request, const RunConfig& config);
CommandResult cmd_scan(double rho_min, double rho_max, double step, const RunConfig& config);
CommandResult cmd_quartet_map(double rho, int alpha_count, const RunConfig& config);
CommandResult cmd_figures(double rho, int points, const RunConfig& config);
/// suite: identity | symmetry | orthogonality | oracle | all. Exit code 1 on any failed check.
CommandResult cmd_verify(const std::string& suite, Fault fault, const RunConfig& config);

/// Exit-code contract: 2 usage, 3 pole/domain, 4 parameter/annulus/capacity, 1 otherwise.
int exit_code_for(const std::exception& e);

/// Writes every file of the result below dir, creating it if needed.
void write_outputs(const CommandResult& result, const std::string& dir);

}  // namespace zgb::cli
