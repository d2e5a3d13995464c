#include "revsim/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "revsim/evolution.hpp"
#include "revsim/replicator.hpp"

namespace revsim {

MetricsRow make_row(std::int64_t time_unit, std::span<const int> living_counts,
                    int nominal, std::span<const double> utilities,
                    std::int64_t removed_cumulative,
                    std::int64_t active_false_messages) {
  MetricsRow row;
  row.time_unit = time_unit;
  row.fractions = population_fractions(living_counts, nominal);
  row.group_utilities.assign(utilities.begin(), utilities.end());
  row.removed_cumulative = removed_cumulative;
  row.active_false_messages = active_false_messages;
  for (int c : living_counts) row.living_dishonest += c;
  row.overall = row.living_dishonest > 0
                    ? overall_utility(row.fractions, utilities)
                    : std::numeric_limits<double>::quiet_NaN();
  return row;
}

double growth_rate(std::span<const double> series, std::size_t t, int window) {
  if (window <= 0) throw std::invalid_argument("growth window must be positive");
  if (t >= series.size() || t < static_cast<std::size_t>(window)) {
    throw std::out_of_range("growth rate index out of range");
  }
  return (series[t] - series[t - static_cast<std::size_t>(window)]) / window;
}

ConvergenceReport detect_convergence(std::span<const MetricsRow> rows,
                                     double threshold, int horizon) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (!(threshold > 0.5 && threshold <= 1.0)) {
    throw std::invalid_argument("dominance threshold must lie in (0.5, 1]");
  }
  ConvergenceReport rep;
  rep.threshold = threshold;
  rep.horizon = horizon;

  int streak_strategy = -1;
  int streak_len = 0;
  std::int64_t streak_start = -1;
  for (const MetricsRow& row : rows) {
    // Dominance is measured against the living population, not the nominal
    // one, so the shares are fractions renormalized by their sum.
    double mass = 0.0;
    double best = 0.0;
    int best_i = -1;
    for (std::size_t i = 0; i < row.fractions.size(); ++i) {
      mass += row.fractions[i];
      if (row.fractions[i] > best) {
        best = row.fractions[i];
        best_i = static_cast<int>(i);
      }
    }
    const bool qualifies = mass > 0.0 && best / mass >= threshold;
    if (!qualifies) {
      streak_strategy = -1;
      streak_len = 0;
      continue;
    }
    if (best_i != streak_strategy) {
      streak_strategy = best_i;
      streak_len = 1;
      streak_start = row.time_unit;
    } else {
      ++streak_len;
    }
    if (streak_len >= horizon) {
      rep.converged = true;
      rep.dominant_index = streak_strategy;
      rep.converged_at = streak_start;
      return rep;
    }
  }
  return rep;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_population_csv(const std::filesystem::path& path,
                          std::span<const MetricsRow> rows, int strategy_min) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time_unit,strategy,fraction,group_utility\n";
  for (const MetricsRow& row : rows) {
    for (std::size_t i = 0; i < row.fractions.size(); ++i) {
      if (row.fractions[i] <= 0.0 && row.group_utilities[i] <= 0.0) continue;
      out << row.time_unit << ',' << (strategy_min + static_cast<int>(i)) << ','
          << format_double(row.fractions[i]) << ','
          << format_double(row.group_utilities[i]) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_summary_csv(const std::filesystem::path& path,
                       std::span<const MetricsRow> rows, int growth_window) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time_unit,overall_utility,growth_rate,living_dishonest,"
         "removed_cumulative,active_false_messages\n";
  std::vector<double> overall;
  overall.reserve(rows.size());
  for (const MetricsRow& row : rows) overall.push_back(row.overall);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const MetricsRow& row = rows[t];
    out << row.time_unit << ',';
    out << (std::isnan(row.overall) ? "" : format_double(row.overall)) << ',';
    if (t >= static_cast<std::size_t>(growth_window) &&
        !std::isnan(overall[t]) &&
        !std::isnan(overall[t - static_cast<std::size_t>(growth_window)])) {
      out << format_double(growth_rate(overall, t, growth_window));
    }
    out << ',' << row.living_dishonest << ',' << row.removed_cumulative << ','
        << row.active_false_messages << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
  out << "step";
  for (std::size_t i = 1; i <= dim; ++i) out << ",x_" << i;
  out << '\n';
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    out << s;
    for (double v : traj.states[s]) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace revsim
