#pragma once

// Closed-form and numeric model of a TCP NewReno flow sharing a droptail
// bottleneck with constant-bitrate traffic.
//
// Units: bytes, seconds, bytes/second. Window and slot counts are real
// valued (fluid model) unless stated otherwise.

#include <vector>

namespace teleqos {

struct NetworkParams {
  double mu = 0.0;     // bottleneck capacity, bytes/s
  double tau = 0.0;    // one-way propagation delay, s
  double buf = 0.0;    // queue capacity B, bytes
  double s_tcp = 0.0;  // TCP segment size, bytes
  int n_ack = 1;       // receiver sends one cumulative ACK per n_ack segments

  /// Throws InvalidParams if any field is out of range.
  void validate() const;

  /// 2*mu*tau, the bandwidth-delay product of the TCP flow.
  double bdp() const { return 2.0 * mu * tau; }
};

/// Aggregate CBR load seen by the TCP source.
struct CbrAggregate {
  double rate_total = 0.0;  // R, bytes/s
  double alpha = 0.0;       // R / mu

  /// Throws InvalidParams unless 0 <= rate < net.mu.
  static CbrAggregate of(const NetworkParams& net, double rate);
};

struct CycleSolution {
  double w_min = 0.0;  // packets
  double q_init = 0.0; // bytes
  double c = 0.0;      // slots in the congestion-avoidance phase
  int c1 = 0;          // slots with decreasing occupancy
  double q_min = 0.0;  // bytes
  double q_max = 0.0;  // bytes, always buf
};

struct HapticFlowSpec {
  double rate_h = 0.0;      // bytes/s
  double gap_h = 0.0;       // s
  double pkt_h = 0.0;       // bytes
  double rate_cross = 0.0;  // bytes/s
  double pkt_cross = 0.0;   // bytes

  /// Builds a spec whose gap is pkt_h / rate_h.
  static HapticFlowSpec from_rate(double rate_h, double pkt_h, double rate_cross,
                                  double pkt_cross);
  void validate() const;
  double rate_total() const { return rate_h + rate_cross; }
};

struct MediaQos {
  double delay = 0.0;   // s
  double jitter = 0.0;  // s
  double loss = 0.0;    // fraction

  bool operator==(const MediaQos&) const = default;
};

struct QosSpec {
  MediaQos haptic{0.030, 0.010, 0.10};
  MediaQos audio{0.150, 0.030, 0.01};
  MediaQos video{0.400, 0.030, 0.01};

  bool operator==(const QosSpec&) const = default;
};

struct AvMuxSpec {
  double s_a = 160.0;  // audio frame size, bytes
  double s_m = 58.0;   // per-packet audio/video fragment, bytes
  double f_v = 25.0;   // video frame rate, Hz

  bool operator==(const AvMuxSpec&) const = default;
};

struct DelayBounds {
  double d_min = 0.0;
  double d_max = 0.0;
};

struct AvDelayBounds {
  double d_aud = 0.0;
  double d_vid = 0.0;
};

struct ValidityFlags {
  bool stability = false;        // R < mu
  bool full_utilization = false; // B > 2 mu tau
  bool single_loss = false;      // R <= 0.65 mu, where d_min is trustworthy

  bool all() const { return stability && full_utilization && single_loss; }
};

/// Empirical upper bound on R/mu for one TCP loss per cycle.
inline constexpr double kSingleLossAlphaLimit = 0.65;

double w_min(const NetworkParams& net, const CbrAggregate& cbr);
double q_init(const NetworkParams& net, const CbrAggregate& cbr);
double slots_per_cycle(const NetworkParams& net, const CbrAggregate& cbr);

/// Highest slot index inspected over one cycle, ceil(c).
int last_slot(const NetworkParams& net, const CbrAggregate& cbr);

/// Occupancy at the start of slot i, 1 <= i <= last_slot().
double queue_at_slot(const NetworkParams& net, const CbrAggregate& cbr, int i);

/// Q(1..last_slot()) computed in one pass.
std::vector<double> queue_profile(const NetworkParams& net, const CbrAggregate& cbr);

struct QueueMinimum {
  double q_min = 0.0;
  int c1 = 0;
};

/// Minimum of the slot profile. Ties go to the smallest slot index.
QueueMinimum solve_q_min(const NetworkParams& net, const CbrAggregate& cbr);

CycleSolution solve_cycle(const NetworkParams& net, const CbrAggregate& cbr);

DelayBounds delay_bounds(const NetworkParams& net, const CbrAggregate& cbr);

/// Largest number of TCP segments the source can emit in a window of
/// length `interval`, given cumulative ACKs every net.n_ack segments.
int m_tcp_max(const NetworkParams& net, const CbrAggregate& cbr, double interval);

/// Upper bound on the positive inter-packet delay variation of a CBR stream
/// with inter-packet gap t_cbr. Can be negative (no positive jitter).
double cbr_jitter_max(const NetworkParams& net, const CbrAggregate& cbr, double t_cbr);

/// Number of cross-traffic packets that fit in one haptic gap.
int m_cross_max(const HapticFlowSpec& h);

/// Positive jitter bound for a telehaptic CBR stream with CBR cross-traffic.
/// Uses net.s_tcp, net.mu and the given cumulative-ACK factor.
double haptic_jitter_max(const NetworkParams& net, const HapticFlowSpec& h, int n_ack);

/// Audio and video frame delays assuming the haptic deadline is met.
AvDelayBounds av_delay_bounds(const AvMuxSpec& mux, double t_h, double haptic_deadline);

ValidityFlags validity_check(const NetworkParams& net, double rate_total);
inline ValidityFlags validity_check(const NetworkParams& net, const CbrAggregate& cbr) {
  return validity_check(net, cbr.rate_total);
}

}  // namespace teleqos
