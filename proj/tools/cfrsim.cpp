// Outage-probability sweep driver.  Reads a key=value config, applies flag
// overrides, runs the Monte Carlo sweep and writes CSV plus a manifest that
// regenerates the CSV byte-identically.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cfr/config.hpp"

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compute-and-forward relay outage simulator"};
  app.set_version_flag("--version", cfr::kToolVersion);

  std::string config_path, schemes_arg, snr_arg, out_path, threads_arg;
  std::optional<std::size_t> trials_arg;
  std::optional<std::uint64_t> seed_arg;
  std::optional<bool> paired_arg;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--schemes", schemes_arg, "comma list of schemes, or 'all'");
  app.add_option("--snr", snr_arg, "SNR grid start:step:stop in dB");
  app.add_option("--trials", trials_arg, "Monte Carlo trials per point");
  app.add_option("--seed", seed_arg, "master seed");
  app.add_option("--out", out_path, "output CSV path (stdout if omitted)");
  app.add_option("--threads", threads_arg, "worker threads, or 'auto'");
  app.add_option("--paired", paired_arg, "same realizations across schemes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfr::ParsedRun run;
  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return 3;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    run = cfr::parse_config(text);
    if (!schemes_arg.empty()) run.sweep.schemes = cfr::parse_scheme_list(schemes_arg);
    if (!snr_arg.empty()) run.sweep.snr_db_points = cfr::parse_snr_grid(snr_arg);
    if (trials_arg) run.sweep.trials = *trials_arg;
    if (seed_arg) run.sweep.master_seed = *seed_arg;
    if (paired_arg) run.sweep.paired = *paired_arg;
    if (!threads_arg.empty()) {
      if (threads_arg == "auto") {
        run.sweep.threads = 0;
      } else {
        try {
          run.sweep.threads = std::stoi(threads_arg);
        } catch (const std::exception&) {
          throw cfr::ConfigError("invalid --threads value '" + threads_arg + "'");
        }
      }
    }
    run.cfg.validate();
    run.sweep.validate();
  } catch (const cfr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const cfr::ContractViolation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  std::string csv;
  try {
    auto points = cfr::estimate_outage(run.cfg, run.sweep);
    csv = cfr::to_csv(points);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }

  if (out_path.empty()) {
    std::cout << csv;
    return 0;
  }
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << csv)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 3;
    }
  }
  {
    std::string mpath = out_path + ".manifest";
    std::ofstream mf(mpath, std::ios::binary);
    if (!mf || !(mf << cfr::to_manifest(run, config_path, utc_now()))) {
      std::cerr << "error: cannot write '" << mpath << "'\n";
      return 3;
    }
  }
  return 0;
}
