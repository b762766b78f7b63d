#pragma once

#include <span>
#include <vector>

#include "teleqos/vh_mux.hpp"

namespace teleqos {

struct TimedBytes {
  double time = 0.0;
  double bytes = 0.0;
};

struct RateSeries {
  std::vector<double> time;  // right edge of each window, s
  std::vector<double> rate;  // bytes/s
  double peak = 0.0;
  double mean = 0.0;  // total bytes over the stream span
  double window = 0.0;
};

/// Sliding-window byte rate over (t - window, t], evaluated every `step`.
/// Throws EmptyStream for an empty input.
RateSeries instantaneous_rate(std::span<const TimedBytes> packets, double window = 0.1,
                              double step = 1e-3);
RateSeries instantaneous_rate(std::span<const MuxPacket> packets, double window = 0.1,
                              double step = 1e-3);

}  // namespace teleqos
