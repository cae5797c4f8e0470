#include <chrono>
#include <ostream>

#include "CLI11.hpp"
#include "wh/cli.hpp"
#include "wh/parallel.hpp"

namespace wh::cli {

using nlohmann::json;

namespace {

int report_error(std::ostream& out, int code, const std::string& kind, const std::string& message) {
  out << json{{"schema", 1}, {"status", "error"}, {"exit_code", code}, {"kind", kind}, {"message", message}}.dump()
      << '\n';
  return code;
}

}  // namespace

int run_main(int argc, char** argv, std::ostream& out) {
  CLI::App app{"Weyl-Heisenberg time-frequency and quantization experiments"};
  std::string config_path, out_dir;
  bool strict = false;
  std::size_t threads = 1;
  app.add_option("--config", config_path, "JSON config {command, parameters, seed}");
  app.add_option("--out", out_dir, "Output directory (replaced atomically)");
  app.add_flag("--strict", strict, "Exit 3 when any numerical warning is raised");
  app.add_option("--threads", threads, "Worker threads for grid evaluation")->check(CLI::Range(1, 256));
  app.require_subcommand(0, 1);
  for (const char* name : {"group-check", "gabor", "cylinder", "quantize", "stellar"})
    app.add_subcommand(name, std::string("run the ") + name + " experiment")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(out, kExitInvalid, "usage", e.what());
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      const std::string sub = subs.front()->get_name();
      if (!cfg.command.empty() && cfg.command != sub)
        throw ConfigError("subcommand '" + sub + "' contradicts config command '" + cfg.command + "'");
      cfg.command = sub;
    }
    if (cfg.command.empty()) throw ConfigError("no command given: pass a subcommand or a config with \"command\"");
  } catch (const ConfigError& e) {
    return report_error(out, kExitInvalid, "validation", e.what());
  }
  if (out_dir.empty()) out_dir = cfg.command + "-out";
  set_thread_count(threads);

  const auto t0 = std::chrono::steady_clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  RunResult result;
  int code = kExitOk;
  std::string kind;
  try {
    result = execute(cfg);
  } catch (const ConfigError& e) {
    code = kExitInvalid;
    kind = "validation";
    result.error = e.what();
  } catch (const std::invalid_argument& e) {
    code = kExitInvalid;
    kind = "validation";
    result.error = e.what();
  } catch (const std::exception& e) {
    code = kExitFailure;
    kind = "numerical";
    result.error = e.what();
  }

  std::string status = "ok";
  if (code != kExitOk) {
    result.files.clear();
    status = "error";
  } else if (strict && !result.warnings.empty()) {
    code = kExitStrict;
    kind = "strict";
    status = "strict-failure";
    result.error = std::to_string(result.warnings.messages.size()) + " warning(s) under --strict";
  }

  json manifest;
  try {
    manifest = write_run(out_dir, cfg, result, seconds(), status);
  } catch (const ConfigError& e) {
    return report_error(out, kExitInvalid, "validation", e.what());
  } catch (const std::exception& e) {
    return report_error(out, kExitFailure, "io", e.what());
  }

  if (code != kExitOk) return report_error(out, code, kind, result.error);
  out << json{{"schema", 1},
              {"status", status},
              {"out", out_dir},
              {"warnings", result.warnings.messages.size()},
              {"outputs", manifest["outputs"]}}
             .dump()
      << '\n';
  return code;
}

}  // namespace wh::cli
