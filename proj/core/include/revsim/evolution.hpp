#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "revsim/rng.hpp"

namespace revsim {

enum class Mode : std::uint8_t { Evolve, Static };

// Population fractions are living-vehicle counts over the nominal dishonest
// population size, so dead-but-unreplaced slots leave the sum below 1.
std::vector<double> population_fractions(std::span<const int> living_counts,
                                         int nominal);

// Fraction-weighted mean utility, (sum a_i * U_i) / (sum a_i).
// Throws std::domain_error when no strategy has living members.
double overall_utility(std::span<const double> fractions,
                       std::span<const double> utilities);

// Indices whose group utility strictly exceeds the overall utility. Empty
// input population yields an empty set rather than an error.
std::vector<int> predominant_set(std::span<const double> fractions,
                                 std::span<const double> utilities);

// Strategy index for one replacement vehicle. In Evolve mode the draw favors
// the predominant set with probability epsilon and otherwise falls back to a
// uniform draw over all strategy_count indices (also when the set is empty).
// Static mode reuses the removed vehicle's strategy.
int select_strategy(Mode mode, double epsilon, std::span<const int> predominant,
                    int strategy_count, int removed_index, Rng& rng);

}  // namespace revsim
