#pragma once

// Scenario configuration. The canonical format is YAML; see README for the
// schema.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sgreen/profiles.hpp"

namespace sgreen {

enum class Scenario { G0, Dress, Scatter, Wavepacket, Scan, Validate };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

struct MassBlock {
  std::string type = "constant";  // constant | smooth | table
  double value = 1.0;
  double left = 1.0, right = 1.0, center = 0.0, width = 1.0;
  double bump = 0.0, bump_center = 0.0, bump_width = 1.0;
  std::string path;
};

struct PotentialBlock {
  std::string type = "free";  // free | harmonic | linear | piecewise | table
  double level = 0.0;
  double omega = 1.0;
  double field = 0.0;
  double half_width = 5.0;
  std::vector<double> breaks;
  std::vector<std::vector<double>> coeffs;
  double left = 0.0, right = 0.0;
  std::string path;
};

struct FrequencyBlock {
  double re = 0.5;
  double im = Frequency::kDefaultEta;
};

struct SingularBlock {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<cplx> P;  ///< empty: the |P| -> infinity limit
};

struct GridBlock {
  double xmin = -5.0;
  double xmax = 5.0;
  std::size_t n = 21;
};

struct ScatterBlock {
  std::optional<double> x;        ///< right probe; default window edge + 1
  std::optional<double> x_prime;  ///< left probe; default window edge - 1
};

struct PacketBlock {
  double x0 = -10.0;
  double k0 = 2.0;
  double sigma = 1.0;
  std::vector<double> times = {0.0};
  std::size_t panels = 16;
  double support = 5.0;
  double eta = 1e-10;
};

struct ScanBlock {
  double alpha = 0.0;
  double beta = 0.7;
  double k = 1.0;
  std::vector<double> epsilons = {0.2, 0.1, 0.05, 0.025};
  std::string shape = "gaussian";
  double cutoff = 0.0;
  double layers_per_epsilon = 64.0;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::G0;
  std::string output;
  double margin = 1.0;
  MassBlock mass;
  PotentialBlock potential;
  FrequencyBlock frequency;
  SingularBlock singular;
  GridBlock grid;
  ScatterBlock scatter;
  PacketBlock packet;
  ScanBlock scan;
  /// Directory against which relative table paths are resolved.
  std::filesystem::path base_dir;
};

/// Parses and validates. ParseError carries the line and field; ValidationError
/// names the violated invariant (e.g. "xmin < xmax").
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

/// Checks the invariants parse_config enforces; useful after overrides.
void validate(const ScenarioConfig& config);

/// Resolved configuration, defaults included, as YAML.
std::string dump_config(const ScenarioConfig& config);

MassProfile make_mass(const ScenarioConfig& config);
PotentialSpec make_potential(const ScenarioConfig& config);
ProblemSpec make_problem(const ScenarioConfig& config);

}  // namespace sgreen
