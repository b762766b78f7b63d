#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "teleqos/sim_types.hpp"

namespace teleqos {

/// One congestion-avoidance cycle between consecutive TCP loss events.
struct CycleObservation {
  SimTime start = 0;
  SimTime end = 0;
  std::uint64_t q_min = 0;  // bytes
  std::uint64_t q_max = 0;  // bytes
  double w_min = 0.0;       // packets
  int losses = 0;           // TCP drops in the loss event opening the cycle
};

struct CycleStats {
  std::vector<CycleObservation> cycles;
  double q_min = 0.0;       // smallest per-cycle minimum, bytes
  double q_min_mean = 0.0;  // mean per-cycle minimum, bytes
  double q_max = 0.0;       // largest per-cycle maximum, bytes
  double q_max_mean = 0.0;
  double period = 0.0;      // mean cycle length, s
  double w_min = 0.0;       // smallest per-cycle minimum window, packets
  double w_min_mean = 0.0;
  double losses_per_cycle = 0.0;
  bool non_stationary = false;  // some cycle-to-cycle q_min change exceeds 10%
  double max_q_min_variation = 0.0;
};

/// Segments the post-warmup occupancy series at TCP loss events. Drops
/// closer together than one maximum round trip form a single event.
class CycleExtractor {
 public:
  CycleExtractor(std::vector<FlowInfo> flows, SimTime warmup, SimTime loss_cluster_gap);

  void consume(const TraceRecord& r);

  /// Throws InsufficientCycles with fewer than three loss events.
  CycleStats finish() const;

  std::size_t loss_events() const { return event_starts_.size(); }

 private:
  struct Partial {
    std::uint64_t q_min = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t q_max = 0;
    double w_min = std::numeric_limits<double>::infinity();
  };

  std::vector<bool> is_tcp_;
  SimTime warmup_;
  SimTime cluster_gap_;
  std::optional<SimTime> last_drop_;
  std::vector<SimTime> event_starts_;
  std::vector<int> event_losses_;
  std::vector<Partial> partials_;  // one per started event
  double last_cwnd_ = NAN;
};

/// Loss events closer than 2 tau + B/mu belong together.
SimTime default_loss_cluster_gap(const Trace& trace);

CycleStats extract_cycles(const Trace& trace);

}  // namespace teleqos
