#pragma once

#include <stdexcept>

#include "revsim/rng.hpp"

namespace revsim {

// A strategy is a submission intensity: the expected number of false
// messages per time unit. Per-tick submission is Bernoulli with
// p = intensity * tick / time_unit, which must not exceed 1.
inline double submit_probability(int intensity, double tick_s, double time_unit_s) {
  double p = static_cast<double>(intensity) * tick_s / time_unit_s;
  if (p > 1.0) {
    throw std::invalid_argument("submission probability exceeds 1; tick too coarse");
  }
  return p;
}

inline bool should_submit(int intensity, double tick_s, double time_unit_s, Rng& rng) {
  return bernoulli(rng, submit_probability(intensity, tick_s, time_unit_s));
}

}  // namespace revsim
