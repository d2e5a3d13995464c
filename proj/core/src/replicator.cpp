#include "revsim/replicator.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace revsim {

std::vector<double> replicator_derivative(std::span<const double> x,
                                          std::span<const double> u) {
  if (x.size() != u.size()) {
    throw std::invalid_argument("state/payoff size mismatch");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += x[i] * u[i];
  std::vector<double> dx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] * (u[i] - mean);
  return dx;
}

namespace {

void clamp_and_renormalize(std::vector<double>& x) {
  double sum = 0.0;
  for (double& v : x) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) throw std::domain_error("replicator state collapsed to zero");
  for (double& v : x) v /= sum;
}

}  // namespace

Trajectory integrate_replicator(std::span<const double> x0,
                                std::span<const double> payoffs, double dt,
                                int steps) {
  if (x0.size() != payoffs.size()) {
    throw std::invalid_argument("state/payoff size mismatch");
  }
  if (x0.empty()) throw std::invalid_argument("empty state");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  for (double v : x0) {
    if (v < 0.0) throw std::invalid_argument("negative initial share");
  }

  std::vector<double> x(x0.begin(), x0.end());
  clamp_and_renormalize(x);

  Trajectory traj;
  traj.dt = dt;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.push_back(x);

  const std::size_t n = x.size();
  std::vector<double> k1, k2, k3, k4, tmp(n);
  for (int s = 0; s < steps; ++s) {
    k1 = replicator_derivative(x, payoffs);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    k2 = replicator_derivative(tmp, payoffs);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    k3 = replicator_derivative(tmp, payoffs);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    k4 = replicator_derivative(tmp, payoffs);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    clamp_and_renormalize(x);
    traj.states.push_back(x);
  }
  return traj;
}

std::vector<double> load_payoff_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open payoff table: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v = 0.0;
    while (ls >> v) out.push_back(v);
    if (!ls.eof()) throw std::runtime_error("malformed payoff table: " + path);
  }
  if (out.empty()) throw std::runtime_error("empty payoff table: " + path);
  return out;
}

}  // namespace revsim
