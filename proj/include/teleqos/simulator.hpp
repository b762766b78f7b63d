#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "teleqos/cycles.hpp"
#include "teleqos/metrics.hpp"
#include "teleqos/scenario.hpp"
#include "teleqos/sim_types.hpp"

namespace teleqos {

/// Per-flow packet accounting over the whole run, warmup included.
struct FlowCounters {
  std::uint64_t created = 0;  // transmissions handed to the bottleneck
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;  // queued or propagating at the end of the run
};

struct RunOptions {
  bool keep_records = false;       // store every TraceRecord in RunResult::trace
  bool keep_delay_series = false;  // per-packet delay series in the metrics
  /// Extra consumer of every record, e.g. a CSV writer.
  std::function<void(const TraceRecord&)> sink;
  /// Checks queue bounds and work conservation on every dequeue; throws
  /// std::logic_error on violation.
  bool check_invariants = true;
};

struct RunResult {
  Trace trace;  // records only when keep_records
  std::vector<FlowMetrics> metrics;
  std::vector<FlowCounters> counters;
  std::uint64_t events = 0;
  std::uint64_t min_queue_after_warmup = 0;  // smallest occupancy seen at or after warmup
  std::uint64_t max_queue = 0;

  const FlowMetrics& flow_metrics(FlowId id) const;
  /// Throws InsufficientCycles when fewer than three loss events were seen.
  CycleStats cycles() const;

 private:
  friend class Simulator;
  std::shared_ptr<const CycleExtractor> cycle_extractor_;
};

/// Serial discrete-event model of the single-bottleneck topology: sources
/// feed the droptail queue directly, the link serves it at mu, data reaches
/// the receivers after tau, ACKs come back over an uncongested path after tau.
/// Same-time events run dequeue, then deliveries/ACKs, then source sends,
/// then timers; ties go to the lower flow id, then FIFO.
class Simulator {
 public:
  /// Validates the scenario (ConfigError) and prepares all sources.
  explicit Simulator(ScenarioConfig scenario);

  /// Runs from t = 0 to `duration`. Each call starts from a fresh state.
  RunResult run(double duration, double warmup, const RunOptions& options = {}) const;
  RunResult run(const RunOptions& options = {}) const;

  const ScenarioConfig& scenario() const { return scenario_; }
  const std::vector<FlowInfo>& flows() const { return flows_; }

  /// Packet schedule of an Adaptive flow, if `flow` is one.
  const std::vector<MuxPacket>* mux_schedule(FlowId flow) const;

 private:
  ScenarioConfig scenario_;
  std::vector<FlowInfo> flows_;
  std::vector<std::vector<MuxPacket>> mux_schedules_;  // per flow, empty unless Adaptive
};

Simulator build_simulator(const ScenarioConfig& scenario);

/// Packets of an Adaptive flow: synthetic (or imported) samples, deadband,
/// visual-haptic multiplexing.
std::vector<MuxPacket> adaptive_flow_packets(const FlowSpec& flow, double duration,
                                             std::uint64_t run_seed);

}  // namespace teleqos
