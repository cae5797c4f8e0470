#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wh/cli.hpp"
#include "wh/parallel.hpp"
#include "wh/simd/kernels.hpp"

#ifndef WH_VERSION
#define WH_VERSION "unknown"
#endif

namespace wh::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string grid_csv(const Grid1D& axis0, const Grid1D& axis1, std::string_view name0, std::string_view name1,
                     const std::vector<double>& values) {
  if (values.size() != axis0.count() * axis1.count()) throw std::invalid_argument("grid_csv: value count does not match axes");
  std::string out;
  out.reserve(values.size() * 24 + 256);
  out += "# ";
  out += std::string(name0) + "_start," + std::string(name0) + "_step,n_" + std::string(name0) + ",";
  out += std::string(name1) + "_start," + std::string(name1) + "_step,n_" + std::string(name1) + "\n";
  out += "# " + format_double(axis0.start()) + "," + format_double(axis0.step()) + "," + std::to_string(axis0.count()) +
         "," + format_double(axis1.start()) + "," + format_double(axis1.step()) + "," + std::to_string(axis1.count()) + "\n";
  const std::size_t n1 = axis1.count();
  for (std::size_t i = 0; i < axis0.count(); ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      if (j > 0) out += ',';
      out += format_double(values[i * n1 + j]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw std::invalid_argument("not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Distribution read_distribution_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid CSV " + path.string());
  std::string line;
  std::vector<double> axes;
  std::vector<double> values;
  std::size_t rows = 0, width = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      try {
        auto v = split_numbers(line.substr(1));
        if (v.size() == 6) axes = v;
      } catch (const std::exception&) {
      }
      continue;
    }
    std::vector<double> row;
    try {
      row = split_numbers(line);
    } catch (const std::exception&) {
      throw ConfigError("grid CSV " + path.string() + ": bad number in row " + std::to_string(rows + 1));
    }
    if (rows == 0) width = row.size();
    if (row.size() != width) throw ConfigError("grid CSV " + path.string() + ": ragged rows");
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (axes.empty()) throw ConfigError("grid CSV " + path.string() + ": missing '# start,step,count,...' header");
  const auto n0 = static_cast<std::size_t>(axes[2]), n1 = static_cast<std::size_t>(axes[5]);
  if (n0 != rows || n1 != width) throw ConfigError("grid CSV " + path.string() + ": header counts do not match the data");
  try {
    return Distribution(PhaseSpaceGrid{Grid1D(axes[0], axes[1], n0), Grid1D(axes[3], axes[4], n1)}, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid CSV " + path.string() + ": " + e.what());
  }
}

json write_run(const fs::path& out_dir, const ExperimentConfig& config, const RunResult& result, double wall_seconds,
               const std::string& status) {
  const fs::path target = fs::absolute(out_dir).lexically_normal();
  if (target.filename().empty()) throw ConfigError("--out must name a directory");
  if (fs::exists(target) && !fs::exists(target / "manifest.json"))
    throw ConfigError("refusing to replace " + target.string() + ": it exists and holds no manifest.json");
  fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp-" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  fs::create_directory(tmp);

  json outputs = json::array();
  for (const auto& f : result.files) {
    std::ofstream os(tmp / f.name, std::ios::binary);
    os << f.content;
    if (!os) throw std::runtime_error("failed writing " + f.name);
    outputs.push_back({{"file", f.name}, {"bytes", f.content.size()}, {"sha256", sha256_hex(f.content)}});
  }
  json manifest = {
      {"schema", 1},
      {"tool", "whtool"},
      {"version", WH_VERSION},
      {"status", status},
      {"config", {{"command", config.command}, {"seed", config.seed}, {"parameters", config.parameters}}},
      {"threads", thread_count()},
      {"simd_backend", std::string(simd::backend_name(simd::active_backend()))},
      {"wall_time_seconds", wall_seconds},
      {"warnings", result.warnings.messages},
      {"outputs", outputs},
  };
  if (!result.error.empty()) manifest["error"] = result.error;
  {
    std::ofstream os(tmp / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << '\n';
    if (!os) throw std::runtime_error("failed writing manifest.json");
  }
  if (fs::exists(target)) fs::remove_all(target);
  fs::rename(tmp, target);
  return manifest;
}

}  // namespace wh::cli
