#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace teleqos {

/// Simulated clock in integer nanoseconds.
using SimTime = std::int64_t;
using FlowId = std::uint32_t;

inline constexpr SimTime kNanosPerSecond = 1'000'000'000;

inline SimTime to_sim_time(double seconds) {
  return static_cast<SimTime>(std::llround(seconds * 1e9));
}
inline double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }

enum class MediaTag : std::uint8_t { Haptic, Audio, Video, TcpData, TcpAck, CbrCross };

const char* media_tag_name(MediaTag t);

/// Payload bytes per medium for multiplexed packets.
struct MediaBytes {
  std::uint32_t haptic = 0;
  std::uint32_t audio = 0;
  std::uint32_t video = 0;

  std::uint32_t total() const { return haptic + audio + video; }
  bool operator==(const MediaBytes&) const = default;
};

struct Packet {
  FlowId flow = 0;
  std::uint64_t seq = 0;
  std::uint32_t size = 0;  // bytes on the wire
  MediaTag tag = MediaTag::CbrCross;
  MediaBytes payload;      // only for multiplexed telehaptic packets
  SimTime created = 0;
  SimTime enqueued = -1;
  SimTime dequeued = -1;
  SimTime delivered = -1;
  bool retransmission = false;

  /// Media bytes for loss and delay accounting. Non-multiplexed packets
  /// count their whole size against their tag.
  MediaBytes media_view() const;
};

enum class EventKind : std::uint8_t { Send, Enqueue, Drop, Dequeue, Deliver, Ack, WindowChange };

const char* event_kind_name(EventKind k);

struct TraceRecord {
  SimTime time = 0;
  EventKind kind = EventKind::Send;
  FlowId flow = 0;
  std::uint64_t seq = 0;
  std::uint32_t size = 0;
  std::uint64_t queue_bytes = 0;  // occupancy after the event
  double cwnd = NAN;              // packets, TCP window-change/ack records only
  MediaTag tag = MediaTag::CbrCross;
  MediaBytes media;               // media_view() of the packet
  SimTime created = 0;            // creation time of the packet concerned
};

struct FlowInfo {
  FlowId id = 0;
  std::string name;
  bool is_tcp = false;
};

/// A run's records plus what is needed to interpret them.
struct Trace {
  std::vector<FlowInfo> flows;
  SimTime warmup = 0;
  SimTime duration = 0;
  double mu = 0.0;   // bytes/s
  double tau = 0.0;  // s
  double buf = 0.0;  // bytes
  std::vector<TraceRecord> records;
};

}  // namespace teleqos
