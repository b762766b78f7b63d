#include "teleqos/cycles.hpp"

#include <algorithm>
#include <cmath>

#include "teleqos/error.hpp"

namespace teleqos {

CycleExtractor::CycleExtractor(std::vector<FlowInfo> flows, SimTime warmup,
                               SimTime loss_cluster_gap)
    : warmup_(warmup), cluster_gap_(loss_cluster_gap) {
  for (const auto& f : flows) {
    if (f.id >= is_tcp_.size()) is_tcp_.resize(f.id + 1, false);
    is_tcp_[f.id] = f.is_tcp;
  }
}

void CycleExtractor::consume(const TraceRecord& r) {
  const bool tcp = r.flow < is_tcp_.size() && is_tcp_[r.flow];
  if (tcp && !std::isnan(r.cwnd)) last_cwnd_ = r.cwnd;
  if (r.time < warmup_) return;

  if (tcp && r.kind == EventKind::Drop) {
    if (!last_drop_ || r.time - *last_drop_ > cluster_gap_) {
      event_starts_.push_back(r.time);
      event_losses_.push_back(0);
      partials_.emplace_back();
    }
    ++event_losses_.back();
    last_drop_ = r.time;
  }
  if (partials_.empty()) return;

  Partial& p = partials_.back();
  if (r.kind == EventKind::Enqueue || r.kind == EventKind::Dequeue || r.kind == EventKind::Drop) {
    p.q_min = std::min(p.q_min, r.queue_bytes);
    p.q_max = std::max(p.q_max, r.queue_bytes);
  }
  if (!std::isnan(last_cwnd_)) p.w_min = std::min(p.w_min, last_cwnd_);
}

CycleStats CycleExtractor::finish() const {
  if (event_starts_.size() < 3) {
    throw InsufficientCycles("need at least 3 TCP loss events after warmup, saw " +
                             std::to_string(event_starts_.size()));
  }
  CycleStats s;
  // The last event only closes the previous cycle.
  for (std::size_t i = 0; i + 1 < event_starts_.size(); ++i) {
    CycleObservation c;
    c.start = event_starts_[i];
    c.end = event_starts_[i + 1];
    c.q_min = partials_[i].q_min;
    c.q_max = partials_[i].q_max;
    c.w_min = partials_[i].w_min;
    c.losses = event_losses_[i];
    s.cycles.push_back(c);
  }
  const double n = static_cast<double>(s.cycles.size());
  s.q_min = INFINITY;
  s.w_min = INFINITY;
  for (std::size_t i = 0; i < s.cycles.size(); ++i) {
    const auto& c = s.cycles[i];
    s.q_min = std::min(s.q_min, static_cast<double>(c.q_min));
    s.q_max = std::max(s.q_max, static_cast<double>(c.q_max));
    s.w_min = std::min(s.w_min, c.w_min);
    s.q_min_mean += static_cast<double>(c.q_min) / n;
    s.q_max_mean += static_cast<double>(c.q_max) / n;
    s.w_min_mean += c.w_min / n;
    s.period += to_seconds(c.end - c.start) / n;
    s.losses_per_cycle += c.losses / n;
    if (i > 0) {
      const double prev = static_cast<double>(s.cycles[i - 1].q_min);
      const double cur = static_cast<double>(c.q_min);
      const double ref = std::max(prev, 1.0);
      s.max_q_min_variation = std::max(s.max_q_min_variation, std::abs(cur - prev) / ref);
    }
  }
  s.non_stationary = s.max_q_min_variation > 0.10;
  return s;
}

SimTime default_loss_cluster_gap(const Trace& trace) {
  return to_sim_time(2.0 * trace.tau + trace.buf / trace.mu);
}

CycleStats extract_cycles(const Trace& trace) {
  CycleExtractor x(trace.flows, trace.warmup, default_loss_cluster_gap(trace));
  for (const auto& r : trace.records) x.consume(r);
  return x.finish();
}

}  // namespace teleqos
