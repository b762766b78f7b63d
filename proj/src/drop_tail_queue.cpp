#include "teleqos/drop_tail_queue.hpp"

#include <stdexcept>

namespace teleqos {

bool DropTailQueue::offer(const Packet& pkt) {
  if (occupancy_ + pkt.size > capacity_) return false;
  occupancy_ += pkt.size;
  packets_.push_back(pkt);
  return true;
}

Packet DropTailQueue::pop() {
  if (packets_.empty()) throw std::logic_error("pop from an empty queue");
  Packet p = packets_.front();
  packets_.pop_front();
  occupancy_ -= p.size;
  return p;
}

}  // namespace teleqos
