#include "teleqos/tcp_newreno.hpp"

#include <algorithm>
#include <stdexcept>

namespace teleqos {

const char* tcp_phase_name(TcpPhase p) {
  switch (p) {
    case TcpPhase::SlowStart: return "slow-start";
    case TcpPhase::CongestionAvoidance: return "congestion-avoidance";
    case TcpPhase::FastRecovery: return "fast-recovery";
  }
  return "?";
}

TcpNewReno::TcpNewReno(Options opt)
    : cwnd_(std::max<std::uint32_t>(1, opt.initial_cwnd)),
      ssthresh_(std::max<std::uint32_t>(2, opt.initial_ssthresh)) {}

TcpSendList TcpNewReno::start() {
  TcpSendList out;
  fill_window(out);
  return out;
}

void TcpNewReno::fill_window(TcpSendList& out) {
  while (outstanding() < cwnd_) out.seqs.push_back(next_seq_++);
  high_seq_ = std::max(high_seq_, next_seq_);
}

void TcpNewReno::grow_window(std::uint64_t newly_acked) {
  if (phase_ == TcpPhase::SlowStart) {
    ++cwnd_;
    if (cwnd_ >= ssthresh_) {
      phase_ = TcpPhase::CongestionAvoidance;
      acked_since_increment_ = 0;
    }
    return;
  }
  // +1 segment per cwnd ACKed segments, i.e. once per round trip.
  acked_since_increment_ += static_cast<std::uint32_t>(newly_acked);
  while (acked_since_increment_ >= cwnd_) {
    acked_since_increment_ -= cwnd_;
    ++cwnd_;
  }
}

TcpSendList TcpNewReno::on_ack(std::uint64_t ack) {
  TcpSendList out;
  if (ack < snd_una_ || ack > high_seq_) {
    out.stale = true;
    return out;
  }

  if (ack > snd_una_) {
    const std::uint64_t newly = ack - snd_una_;
    snd_una_ = ack;
    // After go-back-N the receiver may already hold segments we are resending.
    next_seq_ = std::max(next_seq_, ack);
    if (phase_ == TcpPhase::FastRecovery) {
      if (static_cast<std::int64_t>(ack) > recover_) {
        // Full ACK: leave recovery at the halved window without a burst.
        const auto flight = static_cast<std::uint32_t>(outstanding());
        cwnd_ = std::min(ssthresh_, std::max<std::uint32_t>(flight, 1) + 1);
        phase_ = TcpPhase::CongestionAvoidance;
        dup_acks_ = 0;
        acked_since_increment_ = 0;
      } else {
        // Partial ACK: the next hole is lost too.
        out.seqs.push_back(snd_una_);
        out.retransmissions = 1;
        cwnd_ = cwnd_ > newly ? static_cast<std::uint32_t>(cwnd_ - newly + 1) : 1;
      }
    } else {
      dup_acks_ = 0;
      grow_window(newly);
    }
    fill_window(out);
    return out;
  }

  // Duplicate ACK.
  if (outstanding() == 0) return out;
  if (phase_ == TcpPhase::FastRecovery) {
    ++cwnd_;  // window inflation; new data flows once cwnd exceeds the flight
    fill_window(out);
    return out;
  }
  if (++dup_acks_ == 3 && static_cast<std::int64_t>(ack) > recover_) {
    ssthresh_ = std::max<std::uint32_t>(static_cast<std::uint32_t>(outstanding() / 2), 2);
    recover_ = static_cast<std::int64_t>(next_seq_) - 1;
    cwnd_ = ssthresh_ + 3;
    phase_ = TcpPhase::FastRecovery;
    ++fast_retransmits_;
    out.seqs.push_back(snd_una_);
    out.retransmissions = 1;
    fill_window(out);
  }
  return out;
}

TcpSendList TcpNewReno::on_timeout() {
  TcpSendList out;
  if (outstanding() == 0) return out;
  const std::uint64_t high = next_seq_;
  ssthresh_ = std::max<std::uint32_t>(static_cast<std::uint32_t>(outstanding() / 2), 2);
  recover_ = static_cast<std::int64_t>(next_seq_) - 1;
  cwnd_ = 1;
  dup_acks_ = 0;
  acked_since_increment_ = 0;
  phase_ = TcpPhase::SlowStart;
  next_seq_ = snd_una_;  // go-back-N
  fill_window(out);
  out.retransmissions = static_cast<std::size_t>(
      std::count_if(out.seqs.begin(), out.seqs.end(), [&](std::uint64_t s) { return s < high; }));
  return out;
}

TcpReceiver::TcpReceiver(int n_ack) : n_ack_(n_ack) {
  if (n_ack < 1) throw std::invalid_argument("cumulative-ACK factor must be >= 1");
}

TcpReceiver::Result TcpReceiver::on_segment(std::uint64_t seq) {
  Result r;
  if (seq == next_expected_) {
    ++next_expected_;
    const bool filled_gap = !out_of_order_.empty();
    while (!out_of_order_.empty() && *out_of_order_.begin() == next_expected_) {
      out_of_order_.erase(out_of_order_.begin());
      ++next_expected_;
    }
    if (filled_gap) {
      pending_ = 0;
      return {true, next_expected_, false};
    }
    if (++pending_ >= n_ack_) {
      pending_ = 0;
      return {true, next_expected_, false};
    }
    r.arm_delayed_ack = pending_ == 1;
    return r;
  }
  if (seq > next_expected_) out_of_order_.insert(seq);
  // Out-of-order or duplicate: immediate (duplicate) ACK.
  pending_ = 0;
  return {true, next_expected_, false};
}

TcpReceiver::Result TcpReceiver::on_delayed_ack_timeout() {
  if (pending_ == 0) return {};
  pending_ = 0;
  return {true, next_expected_, false};
}

}  // namespace teleqos
