#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revsim/run.hpp"

namespace {

// 0 success, 2 config error, 3 I/O error, 4 child-run failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitChild = 4;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw revsim::ConfigError("not a number: '" + piece + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<std::string> out_dir) {
  revsim::SimConfig cfg = revsim::parse_config_file(config_path);
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.out_dir = *out_dir;
  const revsim::SimResult res = revsim::run_simulate(cfg);
  std::cout << "simulate: " << res.rows.size() - 1 << " units, ";
  if (res.convergence.converged) {
    std::cout << "converged to strategy "
              << cfg.strategy_min + res.convergence.dominant_index << " at unit "
              << res.convergence.converged_at;
  } else {
    std::cout << "not converged";
  }
  std::cout << ", artifacts in " << res.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& values_text,
              int seeds) {
  const revsim::SimConfig base = revsim::parse_config_file(config_path);
  const std::vector<double> values = parse_csv_doubles(values_text);
  const std::vector<revsim::SweepEntry> entries =
      revsim::run_sweep(base, values, seeds);
  int failures = 0;
  for (const revsim::SweepEntry& e : entries) {
    if (!e.ok) {
      ++failures;
      std::cerr << "child failed (value " << e.value << ", seed " << e.seed
                << "): " << e.error << "\n";
    }
  }
  std::cout << "sweep: " << entries.size() - failures << "/" << entries.size()
            << " runs ok, summary in " << base.out_dir << "/sweep_summary.csv\n";
  return failures == 0 ? kExitOk : kExitChild;
}

int cmd_replicate(const std::string& payoffs, const std::string& x0_text, double dt,
                  int steps, const std::string& out_dir) {
  revsim::run_replicate(payoffs, parse_csv_doubles(x0_text), dt, steps, out_dir);
  std::cout << "replicate: " << steps << " steps, trajectory in " << out_dir
            << "/trajectory.csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation-evolution simulator for vehicular networks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, values_text, payoffs, x0_text;
  std::uint64_t seed = 0;
  int seeds_per_value = 1;
  double dt = 0.0;
  int steps = 0;

  CLI::App* sim = app.add_subcommand("simulate", "Run one simulation");
  sim->add_option("--config", config_path, "Config file")->required();
  CLI::Option* sim_seed = sim->add_option("--seed", seed, "Override config seed");
  CLI::Option* sim_out = sim->add_option("--out", out_dir, "Override output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep init_reputation values");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--values", values_text, "Comma-separated values")->required();
  sweep->add_option("--seeds", seeds_per_value, "Seeds per value");

  CLI::App* rep = app.add_subcommand("replicate", "Integrate replicator dynamics");
  rep->add_option("--payoffs", payoffs, "Payoff table file")->required();
  rep->add_option("--x0", x0_text, "Initial shares, comma-separated")->required();
  rep->add_option("--dt", dt, "Step size")->required();
  rep->add_option("--steps", steps, "Step count")->required();
  rep->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(config_path,
                          *sim_seed ? std::optional<std::uint64_t>(seed) : std::nullopt,
                          *sim_out ? std::optional<std::string>(out_dir) : std::nullopt);
    }
    if (sweep->parsed()) return cmd_sweep(config_path, values_text, seeds_per_value);
    if (rep->parsed()) return cmd_replicate(payoffs, x0_text, dt, steps, out_dir);
  } catch (const revsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const revsim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}
