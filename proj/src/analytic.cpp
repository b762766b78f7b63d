#include "teleqos/analytic.hpp"

#include <cmath>
#include <string>

#include "teleqos/error.hpp"

namespace teleqos {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace

void NetworkParams::validate() const {
  require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
  require(std::isfinite(tau) && tau >= 0.0, "tau must be >= 0");
  require(std::isfinite(buf) && buf > 0.0, "buffer must be > 0");
  require(std::isfinite(s_tcp) && s_tcp > 0.0, "TCP packet size must be > 0");
  require(n_ack >= 1, "cumulative-ACK factor must be >= 1");
}

CbrAggregate CbrAggregate::of(const NetworkParams& net, double rate) {
  net.validate();
  require(std::isfinite(rate) && rate >= 0.0, "CBR rate must be >= 0");
  require(rate < net.mu, "aggregate CBR rate must be below link capacity");
  return {rate, rate / net.mu};
}

HapticFlowSpec HapticFlowSpec::from_rate(double rate_h, double pkt_h, double rate_cross,
                                         double pkt_cross) {
  require(rate_h > 0.0, "haptic rate must be > 0");
  return {rate_h, pkt_h / rate_h, pkt_h, rate_cross, pkt_cross};
}

void HapticFlowSpec::validate() const {
  require(rate_h > 0.0 && gap_h > 0.0 && pkt_h > 0.0, "haptic rate, gap and size must be > 0");
  require(rate_cross >= 0.0, "cross-traffic rate must be >= 0");
  require(rate_cross == 0.0 || pkt_cross > 0.0, "cross-traffic packet size must be > 0");
  // One packet per gap, up to rounding in the caller's units.
  require(std::abs(rate_h * gap_h - pkt_h) <= 1e-6 * pkt_h,
          "haptic rate * gap must equal the packet size");
}

double w_min(const NetworkParams& net, const CbrAggregate& cbr) {
  net.validate();
  require(cbr.alpha >= 0.0 && cbr.alpha < 1.0, "alpha must be in [0, 1)");
  return (net.buf + net.bdp()) * (1.0 - cbr.alpha) / (2.0 * net.s_tcp);
}

double q_init(const NetworkParams& net, const CbrAggregate& cbr) {
  net.validate();
  require(cbr.alpha >= 0.0 && cbr.alpha < 1.0, "alpha must be in [0, 1)");
  return (net.buf + net.bdp()) * (1.0 + cbr.alpha) / 2.0 - net.bdp();
}

double slots_per_cycle(const NetworkParams& net, const CbrAggregate& cbr) {
  return w_min(net, cbr) + 1.0;
}

int last_slot(const NetworkParams& net, const CbrAggregate& cbr) {
  return static_cast<int>(std::ceil(slots_per_cycle(net, cbr)));
}

double queue_at_slot(const NetworkParams& net, const CbrAggregate& cbr, int i) {
  const int last = last_slot(net, cbr);
  if (i < 1 || i > last) {
    throw IndexOutOfRange("slot index " + std::to_string(i) + " outside [1, " +
                          std::to_string(last) + "]");
  }
  const double a = cbr.alpha;
  const double decay = std::pow(a, i - 1);
  double ramp = 0.0;  // sum_{j=0}^{i-3} (i-2-j) a^j, empty for i <= 2
  double aj = 1.0;
  for (int j = 0; j <= i - 3; ++j) {
    ramp += (i - 2 - j) * aj;
    aj *= a;
  }
  return q_init(net, cbr) * decay + (net.buf - net.bdp()) * (1.0 - decay) / 2.0 +
         net.s_tcp * ramp;
}

std::vector<double> queue_profile(const NetworkParams& net, const CbrAggregate& cbr) {
  const int last = last_slot(net, cbr);
  const double a = cbr.alpha;
  const double qi = q_init(net, cbr);
  const double floor_level = (net.buf - net.bdp()) / 2.0;

  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(last));
  double decay = 1.0;  // a^(i-1)
  double ramp = 0.0;   // S_i = sum_{j=0}^{i-3} (i-2-j) a^j
  double geo = 0.0;    // sum_{j=0}^{i-2} a^j, the increment S_{i+1} - S_i
  double aj = 1.0;     // a^(i-1) for extending geo
  for (int i = 1; i <= last; ++i) {
    q.push_back(qi * decay + floor_level * (1.0 - decay) + net.s_tcp * ramp);
    ramp += geo;
    geo += aj;
    aj *= a;
    decay *= a;
  }
  return q;
}

QueueMinimum solve_q_min(const NetworkParams& net, const CbrAggregate& cbr) {
  const std::vector<double> q = queue_profile(net, cbr);

  // Convexity of Q makes the profile unimodal; check it before using argmin.
  const double slack = 1e-9 * net.buf;
  std::size_t k = 1;
  while (k < q.size() && q[k] <= q[k - 1] + slack) ++k;
  for (std::size_t m = k; m < q.size(); ++m) {
    if (q[m] < q[m - 1] - slack) {
      throw InvalidParams("queue profile is not unimodal for these parameters");
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (q[i] < q[best] - slack) best = i;
  }
  return {q[best], static_cast<int>(best)};  // argmin index i-1 == best
}

CycleSolution solve_cycle(const NetworkParams& net, const CbrAggregate& cbr) {
  CycleSolution s;
  s.w_min = w_min(net, cbr);
  s.q_init = q_init(net, cbr);
  s.c = s.w_min + 1.0;
  const QueueMinimum m = solve_q_min(net, cbr);
  s.q_min = m.q_min;
  s.c1 = m.c1;
  s.q_max = net.buf;
  return s;
}

DelayBounds delay_bounds(const NetworkParams& net, const CbrAggregate& cbr) {
  const QueueMinimum m = solve_q_min(net, cbr);
  return {net.tau + m.q_min / net.mu, net.tau + net.buf / net.mu};
}

int m_tcp_max(const NetworkParams& net, const CbrAggregate& cbr, double interval) {
  net.validate();
  require(cbr.rate_total >= 0.0 && cbr.rate_total < net.mu, "CBR rate must be in [0, mu)");
  require(interval >= 0.0, "interval must be >= 0");
  const int n = net.n_ack;
  const double boundary_gap = n * net.s_tcp / net.mu;
  const double burst_gap = n * net.s_tcp / (net.mu - cbr.rate_total);
  int m = n + 1;
  if (interval > boundary_gap) {
    const auto extra = static_cast<int>(std::floor((interval - boundary_gap) / burst_gap));
    m += n * (1 + extra);
  }
  return m;
}

double cbr_jitter_max(const NetworkParams& net, const CbrAggregate& cbr, double t_cbr) {
  require(t_cbr > 0.0, "CBR inter-packet gap must be > 0");
  const int m = m_tcp_max(net, cbr, t_cbr);
  return (m * net.s_tcp) / net.mu + (cbr.rate_total * t_cbr) / net.mu - t_cbr;
}

int m_cross_max(const HapticFlowSpec& h) {
  if (h.rate_cross <= 0.0) return 0;
  return static_cast<int>(std::ceil(h.rate_cross * h.gap_h / h.pkt_cross));
}

double haptic_jitter_max(const NetworkParams& net, const HapticFlowSpec& h, int n_ack) {
  h.validate();
  NetworkParams with_n = net;
  with_n.n_ack = n_ack;
  const CbrAggregate cbr = CbrAggregate::of(with_n, h.rate_total());
  const int m_tcp = m_tcp_max(with_n, cbr, h.gap_h);
  const int m_cross = m_cross_max(h);
  return (m_tcp * net.s_tcp + m_cross * h.pkt_cross + h.rate_h * h.gap_h) / net.mu - h.gap_h;
}

AvDelayBounds av_delay_bounds(const AvMuxSpec& mux, double t_h, double haptic_deadline) {
  require(mux.s_m > 0.0, "audio/video fragment size must be > 0");
  require(mux.f_v > 0.0, "video frame rate must be > 0");
  require(mux.s_a >= 0.0 && t_h >= 0.0, "audio frame size and haptic gap must be >= 0");
  return {haptic_deadline + (mux.s_a / mux.s_m) * t_h, haptic_deadline + 1.0 / mux.f_v};
}

ValidityFlags validity_check(const NetworkParams& net, double rate_total) {
  ValidityFlags f;
  f.stability = rate_total < net.mu;
  f.full_utilization = net.buf > net.bdp();
  f.single_loss = rate_total <= kSingleLossAlphaLimit * net.mu;
  return f;
}

}  // namespace teleqos
