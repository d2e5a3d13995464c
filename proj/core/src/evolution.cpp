#include "revsim/evolution.hpp"

namespace revsim {

std::vector<double> population_fractions(std::span<const int> living_counts,
                                         int nominal) {
  if (nominal < 0) throw std::invalid_argument("nominal population must be non-negative");
  if (nominal == 0) {
    // Degenerate worlds with no deceptive population have no fractions to speak
    // of; report zeros rather than dividing.
    for (int c : living_counts) {
      if (c != 0) throw std::invalid_argument("living vehicles with zero nominal population");
    }
    return std::vector<double>(living_counts.size(), 0.0);
  }
  std::vector<double> fr(living_counts.size());
  for (std::size_t i = 0; i < living_counts.size(); ++i) {
    fr[i] = static_cast<double>(living_counts[i]) / static_cast<double>(nominal);
  }
  return fr;
}

double overall_utility(std::span<const double> fractions,
                       std::span<const double> utilities) {
  if (fractions.size() != utilities.size()) {
    throw std::invalid_argument("fractions/utilities size mismatch");
  }
  double weighted = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    weighted += fractions[i] * utilities[i];
    mass += fractions[i];
  }
  if (mass <= 0.0) throw std::domain_error("overall utility of an empty population");
  return weighted / mass;
}

std::vector<int> predominant_set(std::span<const double> fractions,
                                 std::span<const double> utilities) {
  std::vector<int> out;
  double mass = 0.0;
  for (double f : fractions) mass += f;
  if (mass <= 0.0) return out;
  const double overall = overall_utility(fractions, utilities);
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    if (utilities[i] > overall) out.push_back(static_cast<int>(i));
  }
  return out;
}

int select_strategy(Mode mode, double epsilon, std::span<const int> predominant,
                    int strategy_count, int removed_index, Rng& rng) {
  if (mode == Mode::Static) return removed_index;
  if (strategy_count <= 0) throw std::invalid_argument("empty strategy space");
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("epsilon outside [0, 1]");
  }
  if (bernoulli(rng, epsilon) && !predominant.empty()) {
    return predominant[uniform_index(rng, predominant.size())];
  }
  return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(strategy_count)));
}

}  // namespace revsim
