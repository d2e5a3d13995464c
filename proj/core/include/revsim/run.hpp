#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "revsim/metrics.hpp"
#include "revsim/sim_config.hpp"

namespace revsim {

constexpr double kDominanceThreshold = 0.9;
constexpr int kConvergenceHorizonUnits = 100;
constexpr int kGrowthWindowUnits = 10;

struct SimResult {
  std::vector<MetricsRow> rows;  // one per unit boundary, including unit 0
  ConvergenceReport convergence;
  std::filesystem::path out_dir;
};

// Runs the full simulation described by cfg and writes population.csv,
// summary.csv and convergence.json under cfg.out_dir.
SimResult run_simulate(const SimConfig& cfg);

// Mean growth rate over the final 10% of time units (at least one unit);
// NaN when no rate in that span is defined.
double steady_growth_rate(std::span<const MetricsRow> rows, int window);

struct SweepEntry {
  double value = 0.0;
  std::uint64_t seed = 0;  // derived child seed
  bool ok = false;
  std::string error;
  ConvergenceReport convergence;
  int dominant_strategy = -1;  // resolved label, -1 when not converged
  double steady_growth = 0.0;
  std::filesystem::path out_dir;
};

// One child run per (value, seed index); child r uses child_seed(cfg.seed, r).
// Children that fail are labeled and do not stop the rest. Emits
// sweep_summary.csv under cfg.out_dir.
std::vector<SweepEntry> run_sweep(const SimConfig& base,
                                  const std::vector<double>& values,
                                  int seeds_per_value);

// Integrates the replicator flow for a constant payoff vector read from
// payoff_path and writes trajectory.csv under out_dir.
void run_replicate(const std::string& payoff_path, const std::vector<double>& x0,
                   double dt, int steps, const std::filesystem::path& out_dir);

}  // namespace revsim
