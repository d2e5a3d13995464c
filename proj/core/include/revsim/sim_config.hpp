#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "revsim/evolution.hpp"
#include "revsim/trust.hpp"

namespace revsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full run description. Field names double as the keys of the flat
// `key = value` config format; unknown keys are rejected.
struct SimConfig {
  int grid_rows = 87;
  int grid_cols = 87;
  double block_len_m = 1000.0;
  double speed_kmh = 36.0;
  double tick_s = 1.0;
  double time_unit_s = 5000.0;

  int n_honest = 99900;
  int n_dishonest = 100;

  double init_reputation = 1.0;
  PenaltyMethod penalty_method = PenaltyMethod::Linear;
  double penalty_param = 1.0;

  Mode mode = Mode::Evolve;
  double epsilon = 1.0;
  int replacement_period_units = 1;
  int strategy_min = 1;
  int strategy_max = 100;

  double sensing_radius_m = 1000.0;
  double detection_prob = 1.0;

  double event_rate = 0.0;  // real events per time unit, network-wide
  double event_duration_units = 1.0;

  std::int64_t total_time_units = 400;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  int strategy_count() const { return strategy_max - strategy_min + 1; }
  std::int64_t ticks_per_unit() const {
    return static_cast<std::int64_t>(time_unit_s / tick_s + 0.5);
  }
  double speed_mps() const { return speed_kmh / 3.6; }
};

SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);  // IoError if unreadable
std::string serialize_config(const SimConfig& cfg);
void validate_config(const SimConfig& cfg);  // throws ConfigError

std::string to_string(PenaltyMethod m);
std::string to_string(Mode m);

}  // namespace revsim
