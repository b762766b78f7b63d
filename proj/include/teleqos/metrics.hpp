#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teleqos/sim_types.hpp"

namespace teleqos {

enum class Medium : std::uint8_t { Haptic, Audio, Video, Other };
inline constexpr std::size_t kMediumCount = 4;

struct MediaStats {
  double sent_bytes = 0.0;  // delivered + dropped payload bytes
  double dropped_bytes = 0.0;
  double delay_min = std::numeric_limits<double>::infinity();
  double delay_max = 0.0;

  double loss_fraction() const { return sent_bytes > 0.0 ? dropped_bytes / sent_bytes : 0.0; }
  bool any() const { return sent_bytes > 0.0; }
};

struct FlowMetrics {
  FlowId flow = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  double delay_min = std::numeric_limits<double>::infinity();  // s
  double delay_max = 0.0;                                      // s
  double max_positive_jitter = 0.0;                            // s
  std::array<MediaStats, kMediumCount> media;
  /// (creation time, delay) per delivered packet, when requested.
  std::vector<std::pair<double, double>> delay_series;

  double loss_fraction() const {
    const auto total = delivered + dropped;
    return total ? static_cast<double>(dropped) / static_cast<double>(total) : 0.0;
  }
  const MediaStats& medium(Medium m) const { return media[static_cast<std::size_t>(m)]; }
};

/// Streaming per-flow statistics over delivered/dropped records of packets
/// created at or after the warmup instant.
class FlowMetricsCollector {
 public:
  FlowMetricsCollector(std::vector<FlowInfo> flows, SimTime warmup, bool keep_series = false);

  void consume(const TraceRecord& r);

  /// Throws UnknownFlow for an id not in the trace.
  const FlowMetrics& result(FlowId flow) const;
  const std::vector<FlowMetrics>& all() const { return metrics_; }

 private:
  std::vector<FlowInfo> flows_;
  SimTime warmup_;
  bool keep_series_;
  std::vector<FlowMetrics> metrics_;
  std::vector<double> last_delay_;  // NaN until the first delivery
};

/// Convenience over a stored trace.
FlowMetrics collect_metrics(const Trace& trace, FlowId flow, bool keep_series = true);

}  // namespace teleqos
