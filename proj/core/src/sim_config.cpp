#include "revsim/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "revsim/metrics.hpp"

namespace revsim {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("bad value for '" + key + "': " + value);
  }
  return out;
}

PenaltyMethod parse_penalty(const std::string& v) {
  if (v == "linear") return PenaltyMethod::Linear;
  if (v == "exponential") return PenaltyMethod::Exponential;
  if (v == "logarithmic") return PenaltyMethod::Logarithmic;
  throw ConfigError("unknown penalty_method: " + v);
}

Mode parse_mode(const std::string& v) {
  if (v == "evolve") return Mode::Evolve;
  if (v == "static") return Mode::Static;
  throw ConfigError("unknown mode: " + v);
}

void apply(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "grid_rows") cfg.grid_rows = parse_number<int>(key, value);
  else if (key == "grid_cols") cfg.grid_cols = parse_number<int>(key, value);
  else if (key == "block_len_m") cfg.block_len_m = parse_number<double>(key, value);
  else if (key == "speed_kmh") cfg.speed_kmh = parse_number<double>(key, value);
  else if (key == "tick_s") cfg.tick_s = parse_number<double>(key, value);
  else if (key == "time_unit_s") cfg.time_unit_s = parse_number<double>(key, value);
  else if (key == "n_honest") cfg.n_honest = parse_number<int>(key, value);
  else if (key == "n_dishonest") cfg.n_dishonest = parse_number<int>(key, value);
  else if (key == "init_reputation") cfg.init_reputation = parse_number<double>(key, value);
  else if (key == "penalty_method") cfg.penalty_method = parse_penalty(value);
  else if (key == "penalty_param") cfg.penalty_param = parse_number<double>(key, value);
  else if (key == "mode") cfg.mode = parse_mode(value);
  else if (key == "epsilon") cfg.epsilon = parse_number<double>(key, value);
  else if (key == "replacement_period_units")
    cfg.replacement_period_units = parse_number<int>(key, value);
  else if (key == "strategy_min") cfg.strategy_min = parse_number<int>(key, value);
  else if (key == "strategy_max") cfg.strategy_max = parse_number<int>(key, value);
  else if (key == "sensing_radius_m")
    cfg.sensing_radius_m = parse_number<double>(key, value);
  else if (key == "detection_prob") cfg.detection_prob = parse_number<double>(key, value);
  else if (key == "event_rate") cfg.event_rate = parse_number<double>(key, value);
  else if (key == "event_duration_units")
    cfg.event_duration_units = parse_number<double>(key, value);
  else if (key == "total_time_units")
    cfg.total_time_units = parse_number<std::int64_t>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "out_dir") cfg.out_dir = value;
  else throw ConfigError("unknown config key: " + key);
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    apply(cfg, key, value);
  }
  validate_config(cfg);
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate_config(const SimConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.grid_rows < 2 || cfg.grid_cols < 2) fail("grid must be at least 2x2");
  if (!(cfg.block_len_m > 0.0)) fail("block_len_m must be positive");
  if (!(cfg.speed_kmh > 0.0)) fail("speed_kmh must be positive");
  if (!(cfg.tick_s > 0.0)) fail("tick_s must be positive");
  if (!(cfg.time_unit_s > 0.0)) fail("time_unit_s must be positive");
  const double units = cfg.time_unit_s / cfg.tick_s;
  if (std::abs(units - std::round(units)) > 1e-9 || units < 1.0) {
    fail("time_unit_s must be an integer multiple of tick_s");
  }
  if (cfg.speed_mps() * cfg.tick_s > cfg.block_len_m + 1e-9) {
    fail("a vehicle may not cross more than one block per tick");
  }
  if (cfg.n_honest < 0) fail("n_honest must be nonnegative");
  if (cfg.n_dishonest < 0) fail("n_dishonest must be nonnegative");
  if (!(cfg.init_reputation > 0.0)) fail("init_reputation must be positive");
  if (!(cfg.penalty_param > 0.0)) fail("penalty_param must be positive");
  if (cfg.penalty_method == PenaltyMethod::Exponential && !(cfg.penalty_param > 1.0)) {
    fail("exponential penalty requires penalty_param > 1");
  }
  if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0) fail("epsilon must lie in [0, 1]");
  if (cfg.replacement_period_units < 1) fail("replacement_period_units must be >= 1");
  if (cfg.strategy_min < 1) fail("strategy_min must be at least 1");
  if (cfg.strategy_max < cfg.strategy_min) fail("strategy_max below strategy_min");
  if (static_cast<double>(cfg.strategy_max) * cfg.tick_s > cfg.time_unit_s) {
    fail("strategy_max exceeds one submission per tick");
  }
  if (cfg.sensing_radius_m < 0.0) fail("sensing_radius_m must be nonnegative");
  if (cfg.detection_prob < 0.0 || cfg.detection_prob > 1.0) {
    fail("detection_prob must lie in [0, 1]");
  }
  if (cfg.event_rate < 0.0) fail("event_rate must be nonnegative");
  if (!(cfg.event_duration_units > 0.0)) fail("event_duration_units must be positive");
  if (cfg.total_time_units < 1) fail("total_time_units must be at least 1");
  if (cfg.out_dir.empty()) fail("out_dir must not be empty");
}

std::string to_string(PenaltyMethod m) {
  switch (m) {
    case PenaltyMethod::Linear: return "linear";
    case PenaltyMethod::Exponential: return "exponential";
    case PenaltyMethod::Logarithmic: return "logarithmic";
  }
  return "linear";
}

std::string to_string(Mode m) {
  return m == Mode::Static ? "static" : "evolve";
}

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "grid_rows = " << cfg.grid_rows << '\n';
  out << "grid_cols = " << cfg.grid_cols << '\n';
  out << "block_len_m = " << format_double(cfg.block_len_m) << '\n';
  out << "speed_kmh = " << format_double(cfg.speed_kmh) << '\n';
  out << "tick_s = " << format_double(cfg.tick_s) << '\n';
  out << "time_unit_s = " << format_double(cfg.time_unit_s) << '\n';
  out << "n_honest = " << cfg.n_honest << '\n';
  out << "n_dishonest = " << cfg.n_dishonest << '\n';
  out << "init_reputation = " << format_double(cfg.init_reputation) << '\n';
  out << "penalty_method = " << to_string(cfg.penalty_method) << '\n';
  out << "penalty_param = " << format_double(cfg.penalty_param) << '\n';
  out << "mode = " << to_string(cfg.mode) << '\n';
  out << "epsilon = " << format_double(cfg.epsilon) << '\n';
  out << "replacement_period_units = " << cfg.replacement_period_units << '\n';
  out << "strategy_min = " << cfg.strategy_min << '\n';
  out << "strategy_max = " << cfg.strategy_max << '\n';
  out << "sensing_radius_m = " << format_double(cfg.sensing_radius_m) << '\n';
  out << "detection_prob = " << format_double(cfg.detection_prob) << '\n';
  out << "event_rate = " << format_double(cfg.event_rate) << '\n';
  out << "event_duration_units = " << format_double(cfg.event_duration_units) << '\n';
  out << "total_time_units = " << cfg.total_time_units << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "out_dir = " << cfg.out_dir << '\n';
  return out.str();
}

}  // namespace revsim
