#include "teleqos/vh_mux.hpp"

#include <cmath>

#include "teleqos/error.hpp"

namespace teleqos {

std::uint32_t video_bytes_in_tick(double video_rate, std::int64_t tick) {
  auto cumulative = [&](std::int64_t t) {
    return static_cast<std::int64_t>(std::floor(video_rate * kHapticTick * static_cast<double>(t) + 1e-9));
  };
  return static_cast<std::uint32_t>(cumulative(tick + 1) - cumulative(tick));
}

std::vector<MuxPacket> vh_mux(std::span<const HapticSample> samples,
                              const std::vector<bool>& significant, const MuxConfig& config) {
  if (!(config.video_rate > 0.0)) throw InvalidParams("video rate must be > 0");
  if (config.chunk_ticks < 1) throw InvalidParams("chunk span must be at least one tick");
  if (config.header < 0.0 || config.haptic_payload < 0.0) {
    throw InvalidParams("header and haptic payload sizes must be >= 0");
  }
  if (significant.size() != samples.size()) {
    throw InvalidParams("significance flags and samples differ in length");
  }

  const auto header = static_cast<std::uint32_t>(std::lround(config.header));
  const auto haptic = static_cast<std::uint32_t>(std::lround(config.haptic_payload));

  std::vector<MuxPacket> out;
  std::uint32_t pending_bytes = 0;
  int pending_ticks = 0;
  double pending_since = 0.0;

  auto flush = [&](double now) {
    if (pending_ticks == 0) return;
    out.push_back({now, MuxPacketKind::VideoChunk, 0, pending_bytes, header, pending_since});
    pending_bytes = 0;
    pending_ticks = 0;
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double now = samples[i].time;
    const std::int64_t tick = std::llround(now / kHapticTick);
    const std::uint32_t video = video_bytes_in_tick(config.video_rate, tick);
    if (significant[i]) {
      flush(now);
      out.push_back({now, MuxPacketKind::SignificantHaptic, haptic, video, header, now});
    } else {
      if (pending_ticks == 0) pending_since = now;
      pending_bytes += video;
      if (++pending_ticks == config.chunk_ticks) flush(now);
    }
  }
  // Trailing video leaves with the last sample time.
  if (!samples.empty()) flush(samples.back().time);
  return out;
}

}  // namespace teleqos
