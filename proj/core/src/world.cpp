#include "revsim/world.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "revsim/evolution.hpp"
#include "revsim/sensing.hpp"
#include "revsim/strategy.hpp"

namespace revsim {

namespace {

SimConfig validated(SimConfig cfg) {
  validate_config(cfg);
  return cfg;
}

}  // namespace

World::World(const SimConfig& cfg, std::uint64_t seed)
    : cfg_(validated(cfg)),
      net_(build_network(cfg_.grid_rows, cfg_.grid_cols, cfg_.block_len_m)),
      server_(TrustConfig{cfg_.init_reputation, cfg_.penalty_method,
                          cfg_.penalty_param}),
      events_(net_.cell_count()),
      ledger_(cfg_.strategy_count()),
      rng_(make_rng(seed)),
      ticks_per_unit_(cfg_.ticks_per_unit()),
      step_m_(cfg_.speed_mps() * cfg_.tick_s),
      radius_cells_(radius_cells(cfg_.sensing_radius_m, cfg_.block_len_m)) {
  const double blocks = net_.block_len_m / step_m_;
  const double rounded = std::round(blocks);
  // The phase wheel needs every vehicle to hit intersections on a fixed tick
  // cadence; otherwise fall back to advancing every vehicle every tick.
  exact_phase_ = std::abs(blocks - rounded) < 1e-9 && rounded >= 2.0;
  ticks_per_block_ = exact_phase_ ? static_cast<std::int64_t>(rounded) : 0;
  if (exact_phase_) wheel_.resize(static_cast<std::size_t>(ticks_per_block_));

  buckets_.resize(static_cast<std::size_t>(net_.cell_count()));
  claims_.resize(static_cast<std::size_t>(net_.cell_count()));
  living_per_strategy_.assign(static_cast<std::size_t>(cfg_.strategy_count()), 0);

  place_honest();
  place_dishonest();
}

void World::place_honest() {
  honest_.reserve(static_cast<std::size_t>(cfg_.n_honest));
  for (int k = 0; k < cfg_.n_honest; ++k) {
    HonestVehicle v;
    v.id = server_.admit_vehicle(true, 0, 0);
    v.pos = random_position(net_, rng_);
    if (exact_phase_) {
      // Snap the offset onto the tick lattice, strictly inside the segment,
      // so every later crossing lands exactly on an intersection.
      auto k_along = static_cast<std::int64_t>(
          std::floor(static_cast<double>(v.pos.along) / step_m_));
      k_along = std::clamp<std::int64_t>(k_along, 1, ticks_per_block_ - 1);
      v.pos.along = static_cast<float>(static_cast<double>(k_along) * step_m_);
      const bool fwd =
          v.pos.heading == Heading::East || v.pos.heading == Heading::South;
      const std::int64_t first_cross = fwd ? ticks_per_block_ - k_along : k_along;
      wheel_[static_cast<std::size_t>(first_cross % ticks_per_block_)].push_back(
          static_cast<std::uint32_t>(k));
    }
    v.cell = traversal_cell(v.pos, net_);
    v.bucket_pos = static_cast<std::uint32_t>(buckets_[v.cell].size());
    buckets_[v.cell].push_back(static_cast<std::uint32_t>(k));
    honest_.push_back(v);
  }
}

void World::place_dishonest() {
  dishonest_.reserve(static_cast<std::size_t>(cfg_.n_dishonest) * 2);
  // Initial strategies are spread evenly over the strategy space, one
  // vehicle per strategy when the counts match.
  for (int k = 0; k < cfg_.n_dishonest; ++k) {
    admit_dishonest(k % cfg_.strategy_count());
  }
}

void World::admit_dishonest(int strategy_index) {
  DishonestVehicle v;
  v.id = server_.admit_vehicle(false, cfg_.strategy_min + strategy_index, now_);
  v.strategy_index = strategy_index;
  v.p_submit = submit_probability(cfg_.strategy_min + strategy_index, cfg_.tick_s,
                                  cfg_.time_unit_s);
  v.pos = random_position(net_, rng_);
  v.live_pos = static_cast<std::uint32_t>(live_slots_.size());
  live_slots_.push_back(static_cast<std::uint32_t>(dishonest_.size()));
  dishonest_.push_back(v);
  ++living_per_strategy_[strategy_index];
  ++living_total_;
}

void World::tick() {
  ++now_;
  step_events();

  if (exact_phase_) {
    const std::vector<std::uint32_t>& due =
        wheel_[static_cast<std::size_t>(now_ % ticks_per_block_)];
    for (std::uint32_t h : due) cross_honest(h);
  } else {
    for (std::uint32_t h = 0; h < honest_.size(); ++h) move_honest_generic(h);
  }

  // Reports can cascade into removals of vehicles later in the list, so walk
  // a copy and recheck liveness.
  scratch_slots_ = live_slots_;
  for (std::uint32_t s : scratch_slots_) {
    DishonestVehicle& v = dishonest_[s];
    if (!v.alive) continue;
    v.pos = advance(v.pos, net_, step_m_, rng_);
    if (bernoulli(rng_, v.p_submit)) submit_claim(v);
  }

  if (now_ % ticks_per_unit_ == 0) {
    if (on_boundary) on_boundary(*this);
    const std::int64_t unit = now_ / ticks_per_unit_;
    if (unit % cfg_.replacement_period_units == 0) process_replacements();
  }
}

void World::step_events() {
  if (cfg_.event_rate <= 0.0 && events_.active().empty()) return;
  cell_scratch_.clear();
  for (const TrafficEvent& ev : events_.active()) {
    if (ev.expires_at <= now_) cell_scratch_.push_back(ev.cell);
  }
  events_.retire_expired(now_);
  for (int cell : cell_scratch_) {
    if (!events_.any_active_at(cell)) withdraw_real_claims(cell);
  }

  const Tick duration =
      std::llround(cfg_.event_duration_units * static_cast<double>(ticks_per_unit_));
  if (events_.spawn(now_, cfg_.event_rate, cfg_.tick_s, cfg_.time_unit_s,
                    std::max<Tick>(duration, 1), net_, rng_) > 0) {
    const TrafficEvent& ev = events_.active().back();
    const std::vector<std::uint32_t>& residents = buckets_[ev.cell];
    if (!residents.empty()) {
      // A witness announces the event; the claim is shielded while the event
      // is active and withdrawn when it expires, so its submitter risks nothing.
      const HonestVehicle& witness = honest_[residents.front()];
      if (auto mid = server_.submit_message(witness.id, ev.cell, now_, false)) {
        register_claim(*mid, ev.cell);
      }
    }
  }
}

void World::withdraw_real_claims(int cell) {
  CellClaims& cl = claims_[cell];
  for (std::size_t i = cl.fresh.size(); i-- > 0;) {
    const MessageId m = cl.fresh[i];
    if (!server_.message(m).is_false) {
      server_.withdraw_message(m, now_);
      drop_claim(m);
    }
  }
  for (std::size_t i = cl.disputed.size(); i-- > 0;) {
    const MessageId m = cl.disputed[i];
    if (!server_.message(m).is_false) {
      server_.withdraw_message(m, now_);
      drop_claim(m);
    }
  }
}

void World::cross_honest(std::uint32_t h) {
  HonestVehicle& v = honest_[h];
  const bool fwd = v.pos.heading == Heading::East || v.pos.heading == Heading::South;
  const double to_node = fwd ? net_.block_len_m - static_cast<double>(v.pos.along)
                             : static_cast<double>(v.pos.along);
  const int oc = v.cell;
  v.pos = advance(v.pos, net_, to_node, rng_);
  after_honest_move(h, oc);
}

void World::move_honest_generic(std::uint32_t h) {
  HonestVehicle& v = honest_[h];
  const int oc = v.cell;
  v.pos = advance(v.pos, net_, step_m_, rng_);
  after_honest_move(h, oc);
}

void World::after_honest_move(std::uint32_t h, int old_cell) {
  HonestVehicle& v = honest_[h];
  const int nc = traversal_cell(v.pos, net_);
  if (nc == old_cell) return;

  std::vector<std::uint32_t>& from = buckets_[old_cell];
  const std::uint32_t moved = from.back();
  from[v.bucket_pos] = moved;
  from.pop_back();
  if (v.bucket_pos < from.size()) honest_[moved].bucket_pos = v.bucket_pos;
  v.cell = nc;
  v.bucket_pos = static_cast<std::uint32_t>(buckets_[nc].size());
  buckets_[nc].push_back(h);

  entered_cells(old_cell, nc, cell_scratch_);
  encounter_trials(v.id, cell_scratch_);
}

void World::entered_cells(int old_cell, int new_cell, std::vector<int>& out) const {
  out.clear();
  const int cols = net_.cell_cols();
  const int rows = net_.cell_rows();
  const int nr = new_cell / cols, ncol = new_cell % cols;
  const int orow = old_cell / cols, ocol = old_cell % cols;
  const int rc = radius_cells_;
  for (int r = std::max(0, nr - rc); r <= std::min(rows - 1, nr + rc); ++r) {
    for (int c = std::max(0, ncol - rc); c <= std::min(cols - 1, ncol + rc); ++c) {
      if (std::abs(r - orow) > rc || std::abs(c - ocol) > rc) {
        out.push_back(r * cols + c);
      }
    }
  }
}

void World::submit_claim(DishonestVehicle& v) {
  const int cell = cell_of(v.pos, net_);
  const auto mid = server_.submit_message(v.id, cell, now_, true);
  if (!mid) return;
  register_claim(*mid, cell);
  ledger_.on_submit(v.strategy_index, v.id, now_);
  creation_trials(*mid, cell);
}

void World::register_claim(MessageId msg, int cell) {
  claim_kind_.resize(std::max<std::size_t>(claim_kind_.size(), msg + 1), kGone);
  claim_pos_.resize(claim_kind_.size());
  claim_kind_[msg] = kFresh;
  claim_pos_[msg] = static_cast<std::uint32_t>(claims_[cell].fresh.size());
  claims_[cell].fresh.push_back(msg);
}

// The submission is heard by every honest vehicle already in range; each runs
// one detection trial.
void World::creation_trials(MessageId msg, int cell) {
  if (cfg_.detection_prob <= 0.0 || event_blocks(cell)) return;
  const int cols = net_.cell_cols();
  const int rows = net_.cell_rows();
  const int cr = cell / cols, cc = cell % cols;
  const int rc = radius_cells_;
  std::int64_t n = 0;
  span_scratch_.clear();
  for (int r = std::max(0, cr - rc); r <= std::min(rows - 1, cr + rc); ++r) {
    for (int c = std::max(0, cc - rc); c <= std::min(cols - 1, cc + rc); ++c) {
      const std::size_t sz = buckets_[r * cols + c].size();
      if (sz > 0) {
        span_scratch_.emplace_back(r * cols + c, static_cast<std::uint32_t>(sz));
        n += static_cast<std::int64_t>(sz);
      }
    }
  }
  if (n == 0) return;
  const int m = binomial_small(rng_, n, cfg_.detection_prob);
  if (m == 0) return;
  pick_distinct(n, m);
  msg_scratch_.clear();  // reused as reporter ids here
  for (std::uint64_t idx : pick_scratch_) {
    for (const auto& [c, sz] : span_scratch_) {
      if (idx < sz) {
        msg_scratch_.push_back(honest_[buckets_[c][idx]].id);
        break;
      }
      idx -= sz;
    }
  }
  for (VehicleId reporter : msg_scratch_) deliver_report(msg, reporter);
}

void World::encounter_trials(VehicleId reporter, const std::vector<int>& cells) {
  // Disputed claims are corroborated outright; duplicates bounce off the server.
  for (int c : cells) {
    std::vector<MessageId>& disputed = claims_[c].disputed;
    if (disputed.empty() || event_blocks(c)) continue;
    for (std::size_t i = disputed.size(); i-- > 0;) {
      deliver_report(disputed[i], reporter);
    }
  }

  if (cfg_.detection_prob <= 0.0) return;
  std::int64_t n = 0;
  span_scratch_.clear();
  for (int c : cells) {
    const std::size_t sz = claims_[c].fresh.size();
    if (sz > 0 && !event_blocks(c)) {
      span_scratch_.emplace_back(c, static_cast<std::uint32_t>(sz));
      n += static_cast<std::int64_t>(sz);
    }
  }
  if (n == 0) return;
  const int m = binomial_small(rng_, n, cfg_.detection_prob);
  if (m == 0) return;
  pick_distinct(n, m);
  msg_scratch_.clear();
  for (std::uint64_t idx : pick_scratch_) {
    for (const auto& [c, sz] : span_scratch_) {
      if (idx < sz) {
        msg_scratch_.push_back(claims_[c].fresh[idx]);
        break;
      }
      idx -= sz;
    }
  }
  for (MessageId m_id : msg_scratch_) deliver_report(m_id, reporter);
}

void World::pick_distinct(std::int64_t n, int m) {
  pick_scratch_.clear();
  if (m >= n) {
    for (std::int64_t i = 0; i < n; ++i) pick_scratch_.push_back(i);
    return;
  }
  if (2 * static_cast<std::int64_t>(m) <= n) {
    while (static_cast<int>(pick_scratch_.size()) < m) {
      const std::uint64_t idx = uniform_index(rng_, static_cast<std::size_t>(n));
      if (std::find(pick_scratch_.begin(), pick_scratch_.end(), idx) ==
          pick_scratch_.end()) {
        pick_scratch_.push_back(idx);
      }
    }
    return;
  }
  // Dense draw: partial Fisher-Yates over the index range.
  std::vector<std::uint64_t> all(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < m; ++k) {
    const std::size_t j =
        k + uniform_index(rng_, static_cast<std::size_t>(n - k));
    std::swap(all[k], all[j]);
    pick_scratch_.push_back(all[k]);
  }
}

void World::deliver_report(MessageId msg, VehicleId reporter) {
  const ReportResult res = server_.report_absence(msg, reporter, now_);
  if (res.outcome == ReportOutcome::Decremented) {
    if (res.report_count == 1) promote_claim(msg);
    return;
  }
  if (res.outcome != ReportOutcome::MessageRemoved) return;
  const EventMessage& em = server_.message(msg);
  drop_claim(msg);
  if (em.is_false) {
    ledger_.on_message_removed(em.strategy - cfg_.strategy_min, em.submitter,
                               em.submitted_at, now_);
  }
  if (res.submitter_removed) on_dishonest_removed(em.submitter);
}

void World::promote_claim(MessageId msg) {
  CellClaims& cl = claims_[server_.message(msg).cell];
  remove_from_list(cl.fresh, claim_pos_[msg]);
  claim_pos_[msg] = static_cast<std::uint32_t>(cl.disputed.size());
  cl.disputed.push_back(msg);
  claim_kind_[msg] = kDisputed;
}

void World::drop_claim(MessageId msg) {
  CellClaims& cl = claims_[server_.message(msg).cell];
  if (claim_kind_[msg] == kFresh) {
    remove_from_list(cl.fresh, claim_pos_[msg]);
  } else if (claim_kind_[msg] == kDisputed) {
    remove_from_list(cl.disputed, claim_pos_[msg]);
  }
  claim_kind_[msg] = kGone;
}

void World::remove_from_list(std::vector<MessageId>& list, std::uint32_t pos) {
  const MessageId moved = list.back();
  list[pos] = moved;
  list.pop_back();
  if (pos < list.size()) claim_pos_[moved] = pos;
}

void World::on_dishonest_removed(VehicleId id) {
  const std::uint32_t slot =
      static_cast<std::uint32_t>(id) - static_cast<std::uint32_t>(cfg_.n_honest);
  DishonestVehicle& v = dishonest_[slot];
  v.alive = false;
  const std::uint32_t last = live_slots_.back();
  live_slots_[v.live_pos] = last;
  live_slots_.pop_back();
  if (v.live_pos < live_slots_.size()) dishonest_[last].live_pos = v.live_pos;
  --living_per_strategy_[v.strategy_index];
  --living_total_;
  ++removed_cum_;
}

void World::process_replacements() {
  const std::vector<RemovalRecord>& log = server_.removal_log();
  if (removal_cursor_ >= log.size()) return;
  std::vector<int> pred;
  if (cfg_.mode == Mode::Evolve) {
    const std::vector<double> fr =
        population_fractions(living_per_strategy_, cfg_.n_dishonest);
    pred = predominant_set(fr, ledger_.group_utilities(now_));
  }
  const std::size_t end = log.size();
  for (std::size_t r = removal_cursor_; r < end; ++r) {
    const int removed_index = log[r].strategy - cfg_.strategy_min;
    const int si = select_strategy(cfg_.mode, cfg_.epsilon, pred,
                                   cfg_.strategy_count(), removed_index, rng_);
    admit_dishonest(si);
  }
  removal_cursor_ = end;
}

bool World::event_blocks(int cell) const { return events_.any_active_at(cell); }

MetricsRow World::snapshot_row() const {
  return make_row(current_unit(), living_per_strategy_, cfg_.n_dishonest,
                  ledger_.group_utilities(now_), removed_cum_,
                  server_.live_false_count());
}

std::uint64_t World::state_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(now_));
  for (const HonestVehicle& v : honest_) {
    mix((static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.pos.i)) << 48) |
        (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.pos.j)) << 32) |
        (static_cast<std::uint64_t>(std::bit_cast<std::uint32_t>(v.pos.along))));
    mix((static_cast<std::uint64_t>(v.pos.heading) << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.cell)));
  }
  for (const DishonestVehicle& v : dishonest_) {
    mix((static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.pos.i)) << 48) |
        (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.pos.j)) << 32) |
        (static_cast<std::uint64_t>(std::bit_cast<std::uint32_t>(v.pos.along))));
    mix((static_cast<std::uint64_t>(v.alive) << 40) |
        (static_cast<std::uint64_t>(v.pos.heading) << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.strategy_index)));
    mix(std::bit_cast<std::uint64_t>(server_.reputation(v.id)));
  }
  mix(static_cast<std::uint64_t>(living_total_));
  mix(static_cast<std::uint64_t>(removed_cum_));
  mix(static_cast<std::uint64_t>(server_.live_message_count()));
  mix(static_cast<std::uint64_t>(server_.message_count()));
  return h;
}

}  // namespace revsim
