#pragma once

#include <cstdint>
#include <vector>

#include "revsim/road.hpp"

namespace revsim {

using Tick = std::int64_t;

// A real road event (accident, obstruction) pinned to a block cell.
struct TrafficEvent {
  std::int64_t id = 0;
  int cell = 0;
  Tick started_at = 0;
  Tick expires_at = 0;
};

// Active real events, spawned per tick with probability rate*tick/time_unit
// and retired when their duration elapses.
class EventBoard {
 public:
  EventBoard() = default;
  explicit EventBoard(int cell_count) : active_per_cell_(cell_count, 0) {}

  // Returns the number of events spawned this tick (0 or 1).
  int spawn(Tick now, double rate_per_unit, double tick_s, double time_unit_s,
            Tick duration_ticks, const RoadNetwork& net, Rng& rng);
  void retire_expired(Tick now);

  bool any_active_at(int cell) const {
    return cell < static_cast<int>(active_per_cell_.size()) && active_per_cell_[cell] > 0;
  }
  const std::vector<TrafficEvent>& active() const { return active_; }

 private:
  std::vector<TrafficEvent> active_;
  std::vector<int> active_per_cell_;
  std::int64_t next_id_ = 1;
};

inline int EventBoard::spawn(Tick now, double rate_per_unit, double tick_s,
                             double time_unit_s, Tick duration_ticks,
                             const RoadNetwork& net, Rng& rng) {
  const double p = rate_per_unit * tick_s / time_unit_s;
  if (!bernoulli(rng, p)) return 0;
  TrafficEvent ev;
  ev.id = next_id_++;
  ev.cell = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(net.cell_count())));
  ev.started_at = now;
  ev.expires_at = now + duration_ticks;
  if (active_per_cell_.empty()) active_per_cell_.assign(net.cell_count(), 0);
  active_.push_back(ev);
  ++active_per_cell_[ev.cell];
  return 1;
}

inline void EventBoard::retire_expired(Tick now) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < active_.size(); ++r) {
    if (active_[r].expires_at > now) {
      active_[w++] = active_[r];
    } else {
      --active_per_cell_[active_[r].cell];
    }
  }
  active_.resize(w);
}

}  // namespace revsim
