// Experiment runner: structured JSON configs, deterministic dispatch, and
// machine-readable result files (summary.json + CSV time series).
//
// Exit-status contract: 0 = experiment ran and its pass criterion (if any)
// held; 1 = assertion failure or numerical blow-up; 2 = configuration
// error.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liewave/data_gen.hpp"
#include "liewave/groups.hpp"

namespace liewave {

enum class ExperimentKind {
  LinearDecay,
  RegimeSweep,
  SemilinearExistence,
  EpsilonThreshold,
  GNProbe,
  PropagatorTable,
};

const char* experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(std::string_view name);

// Thrown for malformed or invalid configs; the message carries a line
// anchor when the problem is tied to a config location.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rate_tol = 0.02;
  double critical_band = 2.0;
};

struct ExperimentConfig {
  int schema_version = 1;
  ExperimentKind experiment = ExperimentKind::LinearDecay;

  GroupSpec group = GroupSpec::make(GroupKind::TorusD1);
  int truncation = 4;
  double b = 1.0;
  double m_sq = 1.0;
  double p = 2.0;

  double horizon = 30.0;
  double dt = 0.0;  // 0 -> horizon / 1024
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  int dealias_oversample = 0;  // 0 -> default by p

  DataSpec data;
  Tolerances tolerances;
  std::array<double, 2> fit_window{5.0, 20.0};
  int sample_count = 40;

  // regime_sweep: the (b, m_sq) pairs to visit.
  std::vector<std::pair<double, double>> regimes{{1.0, 1.0}, {2.0, 1.0},
                                                 {3.0, 1.0}};
  // gn_probe
  int ensemble_size = 1000;
  double q = 4.0;
  // epsilon_threshold
  double growth_factor = 2.0;
  // propagator_table
  std::vector<double> lambda_sq_values{0.0, 1.0, 5.0};
  double table_t_max = 10.0;
  int table_t_count = 101;

  std::string output_path;
  bool quiet = false;
};

// Parses and fully validates a config document.  Unknown keys anywhere in
// the tree are errors; all numeric fields are checked against the
// preconditions of the operations they feed.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Runs the experiment, writing summary.json and the experiment's CSV files
// under config.output_path.  Returns the exit status (0/1); configuration
// errors throw ConfigError before any file is written.
int run_experiment(const ExperimentConfig& config);

}  // namespace liewave
