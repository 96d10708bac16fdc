#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ladder/control.hpp"
#include "ladder/propagate.hpp"
#include "ladder/state.hpp"
#include "ladder/system.hpp"

namespace ladder {

/// Thrown on malformed or inconsistent experiment configs. The message names
/// the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One fully specified closed-loop scenario, as read from a config file.
struct ExperimentConfig {
  int n = 0;
  std::vector<double> lambda;
  ControllerParams params;
  Eigen::VectorXcd initial;
  int target_index = 0;  ///< 1-based; always equals n
  IntegratorConfig integrator;
  double epsilon = 1e-4;
  double beta = 0.5;
  std::string output;

  LadderSystem make_system() const { return build_ladder(n, lambda); }
  ComplexState initial_state() const { return ComplexState(initial); }
  TargetState target() const { return TargetState(n); }
};

/// Parses the key = value config grammar:
///   - one `key = value` pair per line, UTF-8
///   - `#` starts a comment (full-line or trailing)
///   - lists are comma-separated; complex vectors are flat "re,im" pairs
///   - the initial state may also be the preset `basis:<j>` with 1-based j
/// Unknown keys, duplicate keys, missing required keys, malformed numbers and
/// out-of-domain values are all rejected with a ConfigError naming the key.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

}  // namespace ladder
