#pragma once

#include <vector>

#include "revsim/events.hpp"
#include "revsim/rng.hpp"
#include "revsim/road.hpp"
#include "revsim/trust.hpp"

namespace revsim {

// Range is cell-granular: two cells are in range when their Chebyshev
// distance is at most floor(radius_m / block_len_m) cells.
int radius_cells(double radius_m, double block_len_m);

bool cells_in_range(const RoadNetwork& net, int cell_a, int cell_b, int radius_cells);

struct SensingResult {
  std::vector<std::int64_t> visible_events;  // real events in range
  std::vector<MessageId> reports;            // claims this vehicle disputes
};

// One vehicle's sensing pass over the broadcast list. A live claim in range
// is checked when no real event is active at the claimed cell and the vehicle
// has not already reported it. An undisputed claim is caught with probability
// detection_prob; once a claim carries a report, later checkers corroborate
// it with certainty.
SensingResult sense(const Position& pos, VehicleId self, const RoadNetwork& net,
                    const EventBoard& events, const TrustServer& server,
                    const std::vector<MessageId>& broadcast, double radius_m,
                    double detection_prob, Rng& rng);

}  // namespace revsim
