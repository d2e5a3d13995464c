#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "revsim/events.hpp"

namespace revsim {

using VehicleId = std::uint32_t;
using MessageId = std::uint32_t;

constexpr Tick kNever = -1;

enum class PenaltyMethod : std::uint8_t { Linear, Exponential, Logarithmic };

// Reputation after one penalty, clamped below at 0:
//   linear:      r - param
//   exponential: r / param          (param must exceed 1)
//   logarithmic: r - param*ln(1+r)
double apply_penalty(double reputation, PenaltyMethod method, double param);

struct TrustConfig {
  double init_reputation = 1.0;
  PenaltyMethod penalty_method = PenaltyMethod::Linear;
  double penalty_param = 1.0;
};

struct VehicleAccount {
  double reputation = 0.0;
  std::int32_t strategy = 0;  // 0 for honest vehicles
  Tick joined_at = 0;
  Tick removed_at = kNever;
  bool honest = true;

  bool active() const { return removed_at == kNever; }
};

// A claim on the broadcast list. Starts with the submitter's reputation at
// submission time; each accepted non-existence report costs one unit.
struct EventMessage {
  VehicleId submitter = 0;
  std::int32_t cell = 0;
  Tick submitted_at = 0;
  Tick removed_at = kNever;
  double reputation = 0.0;
  std::int32_t strategy = 0;
  std::uint32_t report_count = 0;
  bool is_false = true;

  bool live() const { return removed_at == kNever; }
};

struct RemovalRecord {
  VehicleId vehicle = 0;
  std::int32_t strategy = 0;
  Tick removed_at = 0;
};

enum class ReportOutcome : std::uint8_t {
  Decremented,       // message survives with one unit less reputation
  MessageRemoved,    // this report drove the message to zero
  Duplicate,         // reporter already reported this message
  MessageInactive,   // message was already removed
  UnknownMessage,
  RejectedReporter,  // unknown or removed reporter
};

struct ReportResult {
  ReportOutcome outcome = ReportOutcome::UnknownMessage;
  bool submitter_penalized = false;
  bool submitter_removed = false;
  double message_reputation = 0.0;
  std::uint32_t report_count = 0;
};

// Central reputation manager. Owns vehicle accounts, the message ledger
// (live and historical), and the removal log. Spatial concerns live in World.
class TrustServer {
 public:
  explicit TrustServer(TrustConfig cfg);

  // Contract: strategy == 0 for honest vehicles, >= 1 for dishonest ones.
  VehicleId admit_vehicle(bool honest, std::int32_t strategy, Tick now);

  // Rejects submissions from unknown or removed vehicles.
  std::optional<MessageId> submit_message(VehicleId submitter, int cell, Tick now,
                                          bool is_false);

  // One non-existence report against a message. At most one report per
  // (reporter, message) pair is accepted. Removing a message penalizes the
  // submitter if it is still active; a submitter whose reputation reaches
  // zero is removed from the network.
  ReportResult report_absence(MessageId msg, VehicleId reporter, Tick now);

  // Drops a message from the broadcast list without penalty (used when the
  // real event backing a true message expires). Zeroes the message reputation
  // so that live messages are exactly those with reputation > 0.
  void withdraw_message(MessageId msg, Tick now);

  // Contract: the vehicle's reputation must already be <= 0.
  RemovalRecord remove_vehicle(VehicleId v, Tick now);

  bool has_reported(MessageId msg, VehicleId reporter) const;

  const VehicleAccount& account(VehicleId v) const { return vehicles_.at(v); }
  double reputation(VehicleId v) const { return vehicles_.at(v).reputation; }
  bool vehicle_active(VehicleId v) const { return vehicles_.at(v).active(); }
  std::size_t vehicle_count() const { return vehicles_.size(); }

  const EventMessage& message(MessageId m) const { return messages_.at(m); }
  std::size_t message_count() const { return messages_.size(); }
  std::int64_t live_message_count() const { return live_messages_; }
  std::int64_t live_false_count() const { return live_false_; }

  // Live-message ids in submission order. O(total messages); test-scale only.
  std::vector<MessageId> broadcast_list() const;

  const std::vector<RemovalRecord>& removal_log() const { return removals_; }
  const TrustConfig& config() const { return trust_cfg_; }

 private:
  TrustConfig trust_cfg_;
  std::vector<VehicleAccount> vehicles_;
  std::vector<EventMessage> messages_;
  // Reporter sets are only kept for live messages that have at least one
  // report; entries are erased when the message leaves the broadcast list.
  std::unordered_map<MessageId, std::vector<VehicleId>> reporters_;
  std::vector<RemovalRecord> removals_;
  std::int64_t live_messages_ = 0;
  std::int64_t live_false_ = 0;
};

}  // namespace revsim
