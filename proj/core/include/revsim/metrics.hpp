#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace revsim {

struct MetricsRow {
  std::int64_t time_unit = 0;
  std::vector<double> fractions;        // living count / nominal, per strategy
  std::vector<double> group_utilities;  // cumulative, in ticks
  double overall = 0.0;                 // NaN when nobody is alive
  int living_dishonest = 0;
  std::int64_t removed_cumulative = 0;
  std::int64_t active_false_messages = 0;
};

MetricsRow make_row(std::int64_t time_unit, std::span<const int> living_counts,
                    int nominal, std::span<const double> utilities,
                    std::int64_t removed_cumulative,
                    std::int64_t active_false_messages);

// (series[t] - series[t-window]) / window over the overall-utility column.
double growth_rate(std::span<const double> series, std::size_t t, int window);

struct ConvergenceReport {
  bool converged = false;
  int dominant_index = -1;         // strategy index, -1 when not converged
  std::int64_t converged_at = -1;  // first unit of the qualifying window
  double threshold = 0.0;
  int horizon = 0;
};

// A strategy dominates a row when it holds at least `threshold` of the living
// population. Convergence is the first run of `horizon` consecutive rows
// dominated by one and the same strategy.
ConvergenceReport detect_convergence(std::span<const MetricsRow> rows,
                                     double threshold, int horizon);

// Shortest round-trip formatting, used for every floating-point cell so
// artifact bytes are reproducible.
std::string format_double(double v);

void write_population_csv(const std::filesystem::path& path,
                          std::span<const MetricsRow> rows, int strategy_min);
void write_summary_csv(const std::filesystem::path& path,
                       std::span<const MetricsRow> rows, int growth_window);
struct Trajectory;
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

}  // namespace revsim
