#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "revsim/events.hpp"
#include "revsim/trust.hpp"

namespace revsim {

// Cumulative damage accounting. The utility of a strategy group is the total
// on-air duration, in ticks, of every false message its members ever
// submitted; live messages count at their current age. Kept as O(1)
// aggregates so queries never walk the message ledger:
//   U(now) = frozen + live_count*now - live_start_sum
class UtilityLedger {
 public:
  explicit UtilityLedger(int strategy_count)
      : groups_(static_cast<std::size_t>(strategy_count)) {}

  void on_submit(int strategy_index, VehicleId v, Tick now) {
    groups_[strategy_index].add_live(now);
    vehicles_[v].add_live(now);
  }

  void on_message_removed(int strategy_index, VehicleId v, Tick submitted_at,
                          Tick removed_at) {
    groups_[strategy_index].freeze(submitted_at, removed_at);
    vehicles_[v].freeze(submitted_at, removed_at);
  }

  double group_utility(int strategy_index, Tick now) const {
    return groups_[strategy_index].value(now);
  }

  std::vector<double> group_utilities(Tick now) const {
    std::vector<double> out(groups_.size());
    for (std::size_t i = 0; i < groups_.size(); ++i) out[i] = groups_[i].value(now);
    return out;
  }

  double vehicle_utility(VehicleId v, Tick now) const {
    auto it = vehicles_.find(v);
    return it == vehicles_.end() ? 0.0 : it->second.value(now);
  }

  int strategy_count() const { return static_cast<int>(groups_.size()); }

 private:
  struct Agg {
    double frozen = 0.0;
    std::int64_t live_count = 0;
    double live_start_sum = 0.0;

    void add_live(Tick now) {
      ++live_count;
      live_start_sum += static_cast<double>(now);
    }
    void freeze(Tick submitted_at, Tick removed_at) {
      --live_count;
      live_start_sum -= static_cast<double>(submitted_at);
      frozen += static_cast<double>(removed_at - submitted_at);
    }
    double value(Tick now) const {
      return frozen + static_cast<double>(live_count) * static_cast<double>(now) -
             live_start_sum;
    }
  };

  std::vector<Agg> groups_;
  std::unordered_map<VehicleId, Agg> vehicles_;
};

}  // namespace revsim
