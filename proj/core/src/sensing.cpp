#include "revsim/sensing.hpp"

#include <cmath>
#include <cstdlib>

namespace revsim {

int radius_cells(double radius_m, double block_len_m) {
  if (radius_m < 0.0 || block_len_m <= 0.0) {
    throw std::invalid_argument("bad sensing radius or block length");
  }
  return static_cast<int>(std::floor(radius_m / block_len_m));
}

bool cells_in_range(const RoadNetwork& net, int cell_a, int cell_b, int rc) {
  const int cols = net.cell_cols();
  const int ar = cell_a / cols, ac = cell_a % cols;
  const int br = cell_b / cols, bc = cell_b % cols;
  return std::abs(ar - br) <= rc && std::abs(ac - bc) <= rc;
}

SensingResult sense(const Position& pos, VehicleId self, const RoadNetwork& net,
                    const EventBoard& events, const TrustServer& server,
                    const std::vector<MessageId>& broadcast, double radius_m,
                    double detection_prob, Rng& rng) {
  SensingResult out;
  const int rc = radius_cells(radius_m, net.block_len_m);
  const int here = cell_of(pos, net);

  for (const TrafficEvent& ev : events.active()) {
    if (cells_in_range(net, here, ev.cell, rc)) out.visible_events.push_back(ev.id);
  }

  for (MessageId m : broadcast) {
    const EventMessage& msg = server.message(m);
    if (!msg.live()) continue;
    if (!cells_in_range(net, here, msg.cell, rc)) continue;
    if (events.any_active_at(msg.cell)) continue;  // claim matches a real event
    if (msg.submitter == self) continue;
    if (server.has_reported(m, self)) continue;
    const double p = msg.report_count > 0 ? 1.0 : detection_prob;
    if (bernoulli(rng, p)) out.reports.push_back(m);
  }
  return out;
}

}  // namespace revsim
