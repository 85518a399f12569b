// rieszlab command-line tool.
//
//   rieszlab run --config <path> [--out <path>] [--format json|csv] [--seed <int>]
//   rieszlab example hermite --dim <N> [--full-suite]
//
// Exit status: 0 when every report passes, 1 when any fails, 2 on usage or
// configuration errors. RIESZLAB_LOG selects error, info or debug logging.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rieszlab/config.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/suite.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("rieszlab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("RIESZLAB_LOG")) {
    const std::string level = env;
    if (level == "error") spdlog::set_level(spdlog::level::err);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ignoring RIESZLAB_LOG={}, expected error, info or debug", level);
  }
}

int execute(const rieszlab::RunConfig& cfg, const std::string& out_path, rieszlab::ReportFormat format) {
  spdlog::info("running {} checks at dimension {}",
               cfg.checks.empty() ? rieszlab::default_checks(cfg).size() : cfg.checks.size(), cfg.dimension);
  const std::vector<rieszlab::CheckReport> reports = rieszlab::run_suite(cfg);
  for (const auto& r : reports) {
    spdlog::debug("{}: residual {} tolerance {}", r.name, rieszlab::format_real(r.residual),
                  rieszlab::format_real(r.tolerance));
    if (!r.pass) spdlog::error("check {} failed", r.name);
  }
  const std::string text = rieszlab::emit_report(cfg, reports, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      spdlog::error("cannot write {}", out_path);
      return kExitUsage;
    }
    out << text;
    spdlog::info("wrote {}", out_path);
  }
  return rieszlab::all_pass(reports) ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Generalized Riesz systems: construction and residual checks"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name = "json";
  std::int64_t seed = -1;
  auto* run = app.add_subcommand("run", "Run the checks named in a JSON config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_path, "Report file (default: stdout)");
  run->add_option("--format", format_name, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed, "Override the config seed")->check(CLI::NonNegativeNumber);

  auto* example = app.add_subcommand("example", "Built-in examples");
  example->require_subcommand(1);
  auto* hermite = example->add_subcommand("hermite", "Multiplication by 1 + x^2 in the Hermite basis");
  long long dim = 64;
  bool full_suite = false;
  hermite->add_option("--dim", dim, "Truncation dimension")->check(CLI::Range(2LL, 4096LL));
  hermite->add_flag("--full-suite", full_suite, "Run every applicable check");
  hermite->add_option("--out", out_path, "Report file (default: stdout)");
  hermite->add_option("--format", format_name, "Report format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  const auto format = format_name == "csv" ? rieszlab::ReportFormat::csv : rieszlab::ReportFormat::json;

  rieszlab::RunConfig cfg;
  try {
    if (*run) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        spdlog::error("cannot read {}", config_path);
        return kExitUsage;
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = rieszlab::parse_config(text.str());
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    } else {
      std::ostringstream text;
      text << R"({"schema":"rieszlab/1","dimension":)" << dim << R"(,"operator":{"kind":"hermite-x"})";
      if (!full_suite) text << R"(,"checks":["biorthogonality","hermite_oracle","k_psi"])";
      text << "}";
      cfg = rieszlab::parse_config(text.str());
    }
  } catch (const rieszlab::ParseError& e) {
    std::cerr << "config error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.reason() << "\n";
    return kExitUsage;
  }

  try {
    return execute(cfg, out_path, format);
  } catch (const std::exception& e) {
    spdlog::critical("unexpected failure: {}", e.what());
    return kExitFail;
  }
}
