#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgreen/config.hpp"
#include "sgreen/table.hpp"

namespace sgreen {

struct RunOptions {
  std::optional<double> eta;  ///< overrides Im omega (and the packet's eta)
  unsigned threads = 1;
  std::function<void(const std::string&)> log;  ///< progress messages; may be empty
};

/// Dispatches the configured scenario. Module errors are rethrown with the
/// same kind, prefixed by the scenario name.
ResultTable run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Applies the overrides in `options` to a copy of `config`.
ScenarioConfig resolved(const ScenarioConfig& config, const RunOptions& options);

struct InvariantCheck {
  std::string name;
  std::string background;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// The backgrounds exercised by the invariant suite: free, harmonic,
/// linear-field and smooth variable mass.
std::vector<std::pair<std::string, ProblemSpec>> canonical_backgrounds(const Frequency& omega);

/// Structural checks of G0 and the dressed G on every canonical background.
std::vector<InvariantCheck> invariant_suite(const Frequency& omega);

}  // namespace sgreen
