#include "revsim/trust.hpp"

#include <algorithm>
#include <cmath>

namespace revsim {

double apply_penalty(double reputation, PenaltyMethod method, double param) {
  double next = reputation;
  switch (method) {
    case PenaltyMethod::Linear:
      next = reputation - param;
      break;
    case PenaltyMethod::Exponential:
      if (!(param > 1.0)) {
        throw std::invalid_argument("exponential penalty requires param > 1");
      }
      next = reputation / param;
      break;
    case PenaltyMethod::Logarithmic:
      next = reputation - param * std::log1p(reputation);
      break;
  }
  return std::max(next, 0.0);
}

TrustServer::TrustServer(TrustConfig cfg) : trust_cfg_(cfg) {
  if (!(trust_cfg_.init_reputation > 0.0)) {
    throw std::invalid_argument("init_reputation must be positive");
  }
  if (trust_cfg_.penalty_method == PenaltyMethod::Exponential &&
      !(trust_cfg_.penalty_param > 1.0)) {
    throw std::invalid_argument("exponential penalty requires param > 1");
  }
}

VehicleId TrustServer::admit_vehicle(bool honest, std::int32_t strategy, Tick now) {
  if (honest && strategy != 0) {
    throw std::logic_error("admit_vehicle: honest vehicles carry no strategy");
  }
  if (!honest && strategy < 1) {
    throw std::logic_error("admit_vehicle: dishonest vehicles need a strategy");
  }
  VehicleAccount acc;
  acc.reputation = trust_cfg_.init_reputation;
  acc.strategy = strategy;
  acc.joined_at = now;
  acc.honest = honest;
  vehicles_.push_back(acc);
  return static_cast<VehicleId>(vehicles_.size() - 1);
}

std::optional<MessageId> TrustServer::submit_message(VehicleId submitter, int cell,
                                                     Tick now, bool is_false) {
  if (submitter >= vehicles_.size()) return std::nullopt;
  const VehicleAccount& acc = vehicles_[submitter];
  if (!acc.active()) return std::nullopt;

  EventMessage msg;
  msg.submitter = submitter;
  msg.cell = cell;
  msg.submitted_at = now;
  msg.reputation = acc.reputation;
  msg.strategy = acc.strategy;
  msg.is_false = is_false;
  messages_.push_back(msg);
  ++live_messages_;
  if (is_false) ++live_false_;
  return static_cast<MessageId>(messages_.size() - 1);
}

ReportResult TrustServer::report_absence(MessageId msg_id, VehicleId reporter,
                                         Tick now) {
  ReportResult res;
  if (msg_id >= messages_.size()) {
    res.outcome = ReportOutcome::UnknownMessage;
    return res;
  }
  if (reporter >= vehicles_.size() || !vehicles_[reporter].active()) {
    res.outcome = ReportOutcome::RejectedReporter;
    return res;
  }
  EventMessage& msg = messages_[msg_id];
  res.message_reputation = msg.reputation;
  res.report_count = msg.report_count;
  if (!msg.live()) {
    res.outcome = ReportOutcome::MessageInactive;
    return res;
  }

  std::vector<VehicleId>& seen = reporters_[msg_id];
  if (std::find(seen.begin(), seen.end(), reporter) != seen.end()) {
    res.outcome = ReportOutcome::Duplicate;
    return res;
  }
  seen.push_back(reporter);

  msg.reputation = std::max(msg.reputation - 1.0, 0.0);
  ++msg.report_count;
  res.message_reputation = msg.reputation;
  res.report_count = msg.report_count;

  if (msg.reputation > 0.0) {
    res.outcome = ReportOutcome::Decremented;
    return res;
  }

  // Message exhausted: drop it from the broadcast list and punish the
  // submitter if the network still knows them.
  msg.removed_at = now;
  --live_messages_;
  if (msg.is_false) --live_false_;
  reporters_.erase(msg_id);
  res.outcome = ReportOutcome::MessageRemoved;

  VehicleAccount& sub = vehicles_[msg.submitter];
  if (sub.active()) {
    sub.reputation = apply_penalty(sub.reputation, trust_cfg_.penalty_method,
                                   trust_cfg_.penalty_param);
    res.submitter_penalized = true;
    if (sub.reputation <= 0.0) {
      remove_vehicle(msg.submitter, now);
      res.submitter_removed = true;
    }
  }
  return res;
}

void TrustServer::withdraw_message(MessageId msg_id, Tick now) {
  EventMessage& msg = messages_.at(msg_id);
  if (!msg.live()) return;
  msg.reputation = 0.0;
  msg.removed_at = now;
  --live_messages_;
  if (msg.is_false) --live_false_;
  reporters_.erase(msg_id);
}

RemovalRecord TrustServer::remove_vehicle(VehicleId v, Tick now) {
  VehicleAccount& acc = vehicles_.at(v);
  if (!acc.active()) {
    throw std::logic_error("remove_vehicle: vehicle already removed");
  }
  if (acc.reputation > 0.0) {
    throw std::logic_error("remove_vehicle: reputation still positive");
  }
  acc.removed_at = now;
  removals_.push_back(RemovalRecord{v, acc.strategy, now});
  return removals_.back();
}

bool TrustServer::has_reported(MessageId msg, VehicleId reporter) const {
  auto it = reporters_.find(msg);
  if (it == reporters_.end()) return false;
  const std::vector<VehicleId>& seen = it->second;
  return std::find(seen.begin(), seen.end(), reporter) != seen.end();
}

std::vector<MessageId> TrustServer::broadcast_list() const {
  std::vector<MessageId> live;
  for (MessageId m = 0; m < messages_.size(); ++m) {
    if (messages_[m].live()) live.push_back(m);
  }
  return live;
}

}  // namespace revsim
