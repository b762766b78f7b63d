#include "teleqos/rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "teleqos/error.hpp"

namespace teleqos {

RateSeries instantaneous_rate(std::span<const TimedBytes> packets, double window, double step) {
  if (packets.empty()) throw EmptyStream("rate of an empty packet stream");
  if (!(window > 0.0 && step > 0.0)) throw InvalidParams("window and step must be > 0");

  // Integer steps avoid drift between window edges and packet times.
  auto to_step = [&](double t) { return static_cast<std::int64_t>(std::llround(t / step)); };
  const std::int64_t w = std::max<std::int64_t>(1, to_step(window));

  std::vector<std::int64_t> at;
  at.reserve(packets.size());
  double total = 0.0;
  for (const auto& p : packets) {
    at.push_back(to_step(p.time));
    total += p.bytes;
  }
  if (!std::is_sorted(at.begin(), at.end())) throw InvalidParams("packets must be time-ordered");

  const std::int64_t first = at.front();
  const std::int64_t end = at.back() + 1;  // stream covers [first, end) in steps

  RateSeries rs;
  rs.window = static_cast<double>(w) * step;
  rs.mean = total / (static_cast<double>(end - first) * step);

  // Window (t - w, t]; the first full window ends at first + w - 1.
  std::size_t head = 0, tail = 0;
  double in_window = 0.0;
  for (std::int64_t t = first + w - 1; t < std::max(end, first + w); ++t) {
    while (head < at.size() && at[head] <= t) in_window += packets[head++].bytes;
    while (tail < head && at[tail] <= t - w) in_window -= packets[tail++].bytes;
    const double r = in_window / rs.window;
    rs.time.push_back(static_cast<double>(t) * step);
    rs.rate.push_back(r);
    rs.peak = std::max(rs.peak, r);
  }
  return rs;
}

RateSeries instantaneous_rate(std::span<const MuxPacket> packets, double window, double step) {
  std::vector<TimedBytes> tb;
  tb.reserve(packets.size());
  for (const auto& p : packets) tb.push_back({p.time, static_cast<double>(p.size())});
  return instantaneous_rate(std::span<const TimedBytes>(tb), window, step);
}

}  // namespace teleqos
