#pragma once

#include <cstdint>
#include <deque>

#include "teleqos/sim_types.hpp"

namespace teleqos {

/// Byte-capacity FIFO. The head packet stays counted until its
/// transmission completes, so occupancy covers the packet in service.
class DropTailQueue {
 public:
  explicit DropTailQueue(std::uint64_t capacity) : capacity_(capacity) {}

  /// Accepts iff occupancy + size <= capacity. Never admits part of a packet.
  bool offer(const Packet& pkt);

  const Packet& front() const { return packets_.front(); }
  Packet pop();

  bool empty() const { return packets_.empty(); }
  std::size_t size() const { return packets_.size(); }
  std::uint64_t occupancy() const { return occupancy_; }
  std::uint64_t capacity() const { return capacity_; }

 private:
  std::uint64_t capacity_;
  std::uint64_t occupancy_ = 0;
  std::deque<Packet> packets_;
};

}  // namespace teleqos
