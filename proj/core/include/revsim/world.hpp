#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "revsim/events.hpp"
#include "revsim/metrics.hpp"
#include "revsim/rng.hpp"
#include "revsim/road.hpp"
#include "revsim/sim_config.hpp"
#include "revsim/trust.hpp"
#include "revsim/utility.hpp"

namespace revsim {

// The simulated network: a road grid carrying honest vehicles (reporters) and
// dishonest vehicles (false-message submitters), wired to one TrustServer.
//
// Per tick: real events spawn and retire, vehicles move, dishonest vehicles
// roll their submission dice, and honest vehicles run detection trials
// against claims in sensing range. A claim without reports is caught per
// encounter with probability detection_prob; once disputed, every honest
// vehicle that encounters it corroborates with certainty. At every time-unit
// boundary the metrics hook fires first, then removed vehicles are replaced
// in one batch using the strategy-selection rule.
class World {
 public:
  World(const SimConfig& cfg, std::uint64_t seed);

  void tick();
  Tick now() const { return now_; }
  std::int64_t current_unit() const { return now_ / ticks_per_unit_; }

  // Fires at each unit boundary before replacements, so observers see the
  // population with its dead-but-unreplaced gap.
  std::function<void(World&)> on_boundary;

  const std::vector<int>& living_per_strategy() const { return living_per_strategy_; }
  int living_dishonest() const { return living_total_; }
  std::int64_t removed_cumulative() const { return removed_cum_; }
  const TrustServer& server() const { return server_; }
  const UtilityLedger& ledger() const { return ledger_; }
  const RoadNetwork& network() const { return net_; }
  const SimConfig& config() const { return cfg_; }

  MetricsRow snapshot_row() const;
  std::uint64_t state_hash() const;

 private:
  struct HonestVehicle {
    Position pos;  // at the start of its current segment once underway
    VehicleId id = 0;
    std::int32_t cell = 0;
    std::uint32_t bucket_pos = 0;
  };

  struct DishonestVehicle {
    Position pos;
    VehicleId id = 0;
    std::int32_t strategy_index = 0;
    double p_submit = 0.0;
    std::uint32_t live_pos = 0;
    bool alive = true;
  };

  void place_honest();
  void place_dishonest();
  void admit_dishonest(int strategy_index);
  void cross_honest(std::uint32_t h);
  void move_honest_generic(std::uint32_t h);
  void after_honest_move(std::uint32_t h, int old_cell);
  void entered_cells(int old_cell, int new_cell, std::vector<int>& out) const;

  void step_events();
  void withdraw_real_claims(int cell);
  void submit_claim(DishonestVehicle& v);
  void creation_trials(MessageId msg, int cell);
  void encounter_trials(VehicleId reporter, const std::vector<int>& cells);
  void deliver_report(MessageId msg, VehicleId reporter);
  void register_claim(MessageId msg, int cell);
  void promote_claim(MessageId msg);
  void drop_claim(MessageId msg);
  void remove_from_list(std::vector<MessageId>& list, std::uint32_t pos);
  void on_dishonest_removed(VehicleId id);
  void process_replacements();
  void pick_distinct(std::int64_t n, int m);

  bool event_blocks(int cell) const;

  SimConfig cfg_;
  RoadNetwork net_;
  TrustServer server_;
  EventBoard events_;
  UtilityLedger ledger_;
  Rng rng_;

  Tick now_ = 0;
  std::int64_t ticks_per_unit_;
  double step_m_;     // distance per tick
  int radius_cells_;
  std::int64_t ticks_per_block_ = 0;  // 0 when the phase wheel is inapplicable
  bool exact_phase_ = false;

  std::vector<HonestVehicle> honest_;
  std::vector<std::vector<std::uint32_t>> wheel_;    // slot -> honest indices
  std::vector<std::vector<std::uint32_t>> buckets_;  // cell -> honest indices

  // Append-only; slot k belongs to the dishonest vehicle with account id
  // n_honest + k, so removal records map back without a lookup table.
  std::vector<DishonestVehicle> dishonest_;
  std::vector<std::uint32_t> live_slots_;
  std::vector<std::uint32_t> scratch_slots_;

  // Broadcast-list geometry. Claims with no report sit in fresh lists and are
  // only caught by per-encounter trials; claims with a report move to the
  // disputed list and are corroborated deterministically.
  struct CellClaims {
    std::vector<MessageId> fresh;
    std::vector<MessageId> disputed;
  };
  std::vector<CellClaims> claims_;
  enum : std::uint8_t { kFresh = 0, kDisputed = 1, kGone = 2 };
  std::vector<std::uint8_t> claim_kind_;   // per message id
  std::vector<std::uint32_t> claim_pos_;   // index within its cell list

  std::vector<int> living_per_strategy_;
  int living_total_ = 0;
  std::int64_t removed_cum_ = 0;
  std::size_t removal_cursor_ = 0;

  std::vector<int> cell_scratch_;
  std::vector<std::pair<int, std::uint32_t>> span_scratch_;
  std::vector<std::uint64_t> pick_scratch_;
  std::vector<MessageId> msg_scratch_;
};

}  // namespace revsim
