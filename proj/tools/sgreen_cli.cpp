// Command-line front end: one subcommand per scenario.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sgreen/errors.hpp"
#include "sgreen/scenario.hpp"
#include "sgreen/version.hpp"

namespace {

int exit_code(sgreen::ErrorCategory c) {
  switch (c) {
    case sgreen::ErrorCategory::Config: return 2;
    case sgreen::ErrorCategory::Computation: return 3;
    case sgreen::ErrorCategory::Io: return 4;
  }
  return 3;
}

// Single machine-readable line on stderr.
void report(const std::string& kind, const std::string& message) {
  std::string flat = message;
  for (char& ch : flat)
    if (ch == '\n' || ch == '\r') ch = ' ';
  std::cerr << "error " << kind << ": " << flat << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green's functions with point interactions"};
  app.set_version_flag("--version", std::string(sgreen::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  bool verbose = false;
  std::optional<double> eta;
  unsigned threads = 1;
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");
  app.add_option("--eta", eta, "Override Im(omega)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads (0: all cores)");

  std::string config_path, out_path;
  const char* names[][2] = {
      {"g0", "Auxiliary Green's function on the grid"},
      {"dress", "Dressed Green's function on the grid"},
      {"scatter", "Transmission and reflection amplitudes"},
      {"wavepacket", "Gaussian packet evolution"},
      {"scan", "Regularization width scan"},
      {"validate", "Invariant suite over the canonical backgrounds"},
  };
  for (auto& n : names) {
    auto* sub = app.add_subcommand(n[0], n[1]);
    sub->add_option("--config", config_path, "Scenario file (YAML)")->required();
    sub->add_option("--out", out_path, "Output CSV (default: the config's output, else stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("UsageError", e.what());
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    sgreen::ScenarioConfig config = sgreen::load_config(config_path);
    if (sgreen::to_string(config.scenario) != command)
      throw sgreen::ValidationError("config declares scenario '" +
                                    sgreen::to_string(config.scenario) + "' but '" + command +
                                    "' was requested");
    sgreen::RunOptions opts;
    opts.eta = eta;
    opts.threads = threads;
    if (verbose) opts.log = [](const std::string& m) { std::cerr << "[sgreen] " << m << "\n"; };

    sgreen::ResultTable table = sgreen::run_scenario(config, opts);
    std::string target = out_path.empty() ? config.output : out_path;
    if (target.empty() || target == "-") {
      std::cout << sgreen::format_csv(table);
    } else {
      sgreen::write_csv(table, target);
      if (verbose) std::cerr << "[sgreen] wrote " << table.rows.size() << " rows to " << target << "\n";
    }
    if (command == "validate") {
      const auto pass = table.column("pass");
      for (const auto& row : table.rows)
        if (row[pass] != 1.0) {
          report("ValidationFailed", "one or more invariant checks failed");
          return 3;
        }
    }
  } catch (const sgreen::Error& e) {
    report(e.kind(), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    report("InternalError", e.what());
    return 3;
  }
  return 0;
}
