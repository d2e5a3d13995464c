#pragma once

#include <span>
#include <string>
#include <vector>

namespace revsim {

// dx_i/dt = x_i * (u_i - <u>) with <u> = sum_j x_j u_j. Entries sum to zero
// whenever x lies on the simplex.
std::vector<double> replicator_derivative(std::span<const double> x,
                                          std::span<const double> u);

struct Trajectory {
  double dt = 0.0;
  // states[k] is the population share vector after k steps; states.front()
  // is the (renormalized) initial condition.
  std::vector<std::vector<double>> states;
};

// Classic RK4 with fixed step. Constant payoff vector keeps the flow
// analytically solvable, which the tests exploit. After every step negative
// round-off is clamped to zero and the state is renormalized onto the simplex.
Trajectory integrate_replicator(std::span<const double> x0,
                                std::span<const double> payoffs, double dt,
                                int steps);

// Whitespace-separated reals, '#' starts a comment until end of line.
std::vector<double> load_payoff_table(const std::string& path);

}  // namespace revsim
