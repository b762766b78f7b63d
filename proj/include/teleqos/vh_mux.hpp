#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "teleqos/haptic_trace.hpp"

namespace teleqos {

enum class MuxPacketKind { SignificantHaptic, VideoChunk };

struct MuxPacket {
  double time = 0.0;  // emission time, s
  MuxPacketKind kind = MuxPacketKind::SignificantHaptic;
  std::uint32_t haptic_bytes = 0;
  std::uint32_t video_bytes = 0;
  std::uint32_t header_bytes = 0;
  double oldest_video = 0.0;  // generation time of the oldest video byte carried

  std::uint32_t size() const { return haptic_bytes + video_bytes + header_bytes; }
};

/// Visual-haptic multiplexer parameters. Defaults give 137 B significant
/// packets for 400 kbps video (12 B haptic + 50 B video + 75 B header).
struct MuxConfig {
  double video_rate = 50000.0;  // bytes/s
  double header = 75.0;         // bytes per packet
  double haptic_payload = 12.0; // bytes per significant sample
  int chunk_ticks = 15;         // max video span per chunk packet, in 1 ms ticks

  bool operator==(const MuxConfig&) const = default;
};

/// Video bytes produced during tick i under a cumulative-floor schedule.
std::uint32_t video_bytes_in_tick(double video_rate, std::int64_t tick);

/// Packs significant samples with the current millisecond of video and
/// batches video during insignificant runs into chunks of at most
/// `chunk_ticks` ms, flushing any pending chunk ahead of a significant packet.
std::vector<MuxPacket> vh_mux(std::span<const HapticSample> samples,
                              const std::vector<bool>& significant, const MuxConfig& config);

}  // namespace teleqos
