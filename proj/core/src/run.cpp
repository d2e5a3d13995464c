#include "revsim/run.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "json.hpp"
#include "revsim/replicator.hpp"
#include "revsim/world.hpp"

namespace revsim {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_convergence_json(const std::filesystem::path& path,
                            const ConvergenceReport& rep, int strategy_min) {
  nlohmann::json j;
  j["converged"] = rep.converged;
  if (rep.converged) {
    j["dominant_strategy"] = strategy_min + rep.dominant_index;
    j["convergence_time_units"] = rep.converged_at;
  } else {
    j["dominant_strategy"] = nullptr;
    j["convergence_time_units"] = nullptr;
  }
  j["dominance_threshold"] = rep.threshold;
  j["horizon_units"] = rep.horizon;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

SimResult run_simulate(const SimConfig& cfg) {
  SimResult res;
  res.out_dir = cfg.out_dir;
  ensure_dir(res.out_dir);

  World world(cfg, cfg.seed);
  res.rows.reserve(static_cast<std::size_t>(cfg.total_time_units) + 1);
  res.rows.push_back(world.snapshot_row());
  world.on_boundary = [&res](World& w) { res.rows.push_back(w.snapshot_row()); };
  const std::int64_t total_ticks = cfg.total_time_units * cfg.ticks_per_unit();
  for (std::int64_t t = 0; t < total_ticks; ++t) world.tick();

  res.convergence =
      detect_convergence(res.rows, kDominanceThreshold, kConvergenceHorizonUnits);

  try {
    write_population_csv(res.out_dir / "population.csv", res.rows, cfg.strategy_min);
    write_summary_csv(res.out_dir / "summary.csv", res.rows, kGrowthWindowUnits);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  write_convergence_json(res.out_dir / "convergence.json", res.convergence,
                         cfg.strategy_min);
  return res;
}

double steady_growth_rate(std::span<const MetricsRow> rows, int window) {
  if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> overall;
  overall.reserve(rows.size());
  for (const MetricsRow& r : rows) overall.push_back(r.overall);
  const std::size_t last = rows.size() - 1;
  const std::size_t span = std::max<std::size_t>(last / 10, 1);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t t = last - std::min(span - 1, last); t <= last; ++t) {
    if (t < static_cast<std::size_t>(window)) continue;
    if (std::isnan(overall[t]) || std::isnan(overall[t - window])) continue;
    sum += growth_rate(overall, t, window);
    ++count;
  }
  if (count == 0) return std::numeric_limits<double>::quiet_NaN();
  return sum / static_cast<double>(count);
}

std::vector<SweepEntry> run_sweep(const SimConfig& base,
                                  const std::vector<double>& values,
                                  int seeds_per_value) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (seeds_per_value < 1) throw ConfigError("sweep needs seeds >= 1");

  // Validate every child config up front so a bad value is a config error,
  // not a child failure.
  std::vector<SimConfig> child_cfgs;
  std::vector<SweepEntry> entries;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    for (int si = 0; si < seeds_per_value; ++si) {
      const std::uint64_t run_index =
          static_cast<std::uint64_t>(vi) * static_cast<std::uint64_t>(seeds_per_value) +
          static_cast<std::uint64_t>(si);
      SimConfig child = base;
      child.init_reputation = values[vi];
      child.seed = child_seed(base.seed, run_index);
      const std::filesystem::path dir =
          std::filesystem::path(base.out_dir) /
          ("run_v" + format_double(values[vi]) + "_k" + std::to_string(si));
      child.out_dir = dir.string();
      validate_config(child);
      child_cfgs.push_back(child);
      SweepEntry e;
      e.value = values[vi];
      e.seed = child.seed;
      e.out_dir = dir;
      entries.push_back(e);
    }
  }
  ensure_dir(base.out_dir);

  // Children are independent; each worker owns the entry it claimed.
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(child_cfgs.size()));
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= child_cfgs.size()) return;
      SweepEntry& e = entries[i];
      try {
        const SimResult r = run_simulate(child_cfgs[i]);
        e.ok = true;
        e.convergence = r.convergence;
        if (r.convergence.converged) {
          e.dominant_strategy = child_cfgs[i].strategy_min + r.convergence.dominant_index;
        }
        e.steady_growth = steady_growth_rate(r.rows, kGrowthWindowUnits);
      } catch (const std::exception& ex) {
        e.ok = false;
        e.error = ex.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  const std::filesystem::path summary =
      std::filesystem::path(base.out_dir) / "sweep_summary.csv";
  std::ofstream out(summary, std::ios::binary);
  if (!out) throw IoError("cannot write " + summary.string());
  out << "param_value,seed,dominant_strategy,convergence_time_units,"
         "steady_growth_rate\n";
  for (const SweepEntry& e : entries) {
    out << format_double(e.value) << ',' << e.seed << ',';
    if (e.ok && e.convergence.converged) out << e.dominant_strategy;
    out << ',';
    if (e.ok && e.convergence.converged) out << e.convergence.converged_at;
    out << ',';
    if (e.ok && !std::isnan(e.steady_growth)) out << format_double(e.steady_growth);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + summary.string());
  return entries;
}

void run_replicate(const std::string& payoff_path, const std::vector<double>& x0,
                   double dt, int steps, const std::filesystem::path& out_dir) {
  {
    std::ifstream probe(payoff_path);
    if (!probe) throw IoError("cannot open payoff table: " + payoff_path);
  }
  std::vector<double> payoffs;
  try {
    payoffs = load_payoff_table(payoff_path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  if (x0.size() != payoffs.size()) {
    throw ConfigError("x0 dimension does not match payoff table");
  }
  double sum = 0.0;
  for (double v : x0) {
    if (v < 0.0) throw ConfigError("x0 entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw ConfigError("x0 must lie on the simplex");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (steps < 1) throw ConfigError("steps must be at least 1");

  const Trajectory traj = integrate_replicator(x0, payoffs, dt, steps);
  ensure_dir(out_dir);
  try {
    write_trajectory_csv(out_dir / "trajectory.csv", traj);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

}  // namespace revsim
