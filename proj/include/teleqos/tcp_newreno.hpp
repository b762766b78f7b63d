#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace teleqos {

enum class TcpPhase { SlowStart, CongestionAvoidance, FastRecovery };

const char* tcp_phase_name(TcpPhase p);

/// Segments the sender wants on the wire after an event, in order.
struct TcpSendList {
  std::vector<std::uint64_t> seqs;
  std::size_t retransmissions = 0;  // leading entries of `seqs` that are retransmits
  bool stale = false;               // the ACK was older than snd_una and ignored
};

/// Packet-counting NewReno sender with an infinite backlog.
///
/// Sequence numbers count segments from 0; an ACK carries the next
/// expected segment. In congestion avoidance the window grows by one after
/// `cwnd` ACKed segments, and the burst released by that ACK carries the
/// extra probing segment. Three duplicate ACKs trigger fast retransmit;
/// partial ACKs retransmit the next hole; a full ACK of the recovery point
/// re-enters congestion avoidance with the halved window.
class TcpNewReno {
 public:
  struct Options {
    std::uint32_t initial_cwnd = 2;
    std::uint32_t initial_ssthresh = 1u << 30;
  };

  TcpNewReno() : TcpNewReno(Options{}) {}
  explicit TcpNewReno(Options opt);

  /// Initial flight allowed by the window.
  TcpSendList start();
  TcpSendList on_ack(std::uint64_t ack);
  /// Retransmission timeout: collapse to one segment and go back to snd_una.
  TcpSendList on_timeout();

  TcpPhase phase() const { return phase_; }
  double cwnd() const { return static_cast<double>(cwnd_); }
  std::uint32_t ssthresh() const { return ssthresh_; }
  std::uint64_t snd_una() const { return snd_una_; }
  std::uint64_t next_seq() const { return next_seq_; }
  std::uint64_t outstanding() const { return next_seq_ - snd_una_; }
  std::uint32_t dup_acks() const { return dup_acks_; }
  std::int64_t recover() const { return recover_; }
  std::uint32_t acked_since_increment() const { return acked_since_increment_; }
  std::uint64_t fast_retransmits() const { return fast_retransmits_; }

 private:
  void fill_window(TcpSendList& out);
  void grow_window(std::uint64_t newly_acked);

  TcpPhase phase_ = TcpPhase::SlowStart;
  std::uint32_t cwnd_;
  std::uint32_t ssthresh_;
  std::uint64_t snd_una_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t high_seq_ = 0;  // one past the highest segment ever sent
  std::uint32_t dup_acks_ = 0;
  std::int64_t recover_ = -1;  // highest segment outstanding when recovery began
  std::uint32_t acked_since_increment_ = 0;
  std::uint64_t fast_retransmits_ = 0;
};

/// Receiver with cumulative ACKs every `n_ack` in-order segments.
/// Out-of-order and gap-filling segments are ACKed immediately.
class TcpReceiver {
 public:
  explicit TcpReceiver(int n_ack);

  struct Result {
    bool send_ack = false;
    std::uint64_t ack = 0;
    bool arm_delayed_ack = false;  // caller should start the delayed-ACK timer
  };

  Result on_segment(std::uint64_t seq);
  /// Delayed-ACK timer expiry.
  Result on_delayed_ack_timeout();

  std::uint64_t next_expected() const { return next_expected_; }
  int pending() const { return pending_; }

 private:
  int n_ack_;
  std::uint64_t next_expected_ = 0;
  int pending_ = 0;
  std::set<std::uint64_t> out_of_order_;
};

}  // namespace teleqos
