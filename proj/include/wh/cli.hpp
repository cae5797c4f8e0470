#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wh/types.hpp"

namespace wh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitStrict = 3;

/// Bad config or parameter. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;  // group-check, gabor, cylinder, quantize, stellar
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
};

/// Reads {command, parameters, seed}. Unknown top-level keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  std::vector<OutputFile> files;
  Warnings warnings;
  std::string error;  // set for failed runs, echoed in the manifest
};

/// Validates the parameters of config.command and runs it. Throws ConfigError on
/// invalid input; numerical failures propagate as other exceptions.
RunResult execute(const ExperimentConfig& config);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// %.17g, the fixed numeric format of every CSV and JSON report.
std::string format_double(double v);

/// Grid CSV: "# omega_start,..." names line, a "# v,..." values line, then one
/// comma-separated row per axis-0 node.
std::string grid_csv(const Grid1D& axis0, const Grid1D& axis1, std::string_view name0, std::string_view name1,
                     const std::vector<double>& values);
/// Parses a grid CSV written by grid_csv (or by hand in the same layout).
Distribution read_distribution_csv(const std::filesystem::path& path);

/// Writes the files and manifest.json into a temp directory next to out_dir, then
/// renames it into place. An existing out_dir is replaced only if it holds a
/// manifest.json from an earlier run. Returns the manifest.
nlohmann::json write_run(const std::filesystem::path& out_dir, const ExperimentConfig& config, const RunResult& result,
                         double wall_seconds, const std::string& status);

/// Entry point behind whtool. Reports go to out, error JSON to out as well.
int run_main(int argc, char** argv, std::ostream& out);

}  // namespace wh::cli
