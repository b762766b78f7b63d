#include "teleqos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "teleqos/error.hpp"

namespace teleqos {

const char* media_tag_name(MediaTag t) {
  switch (t) {
    case MediaTag::Haptic: return "haptic";
    case MediaTag::Audio: return "audio";
    case MediaTag::Video: return "video";
    case MediaTag::TcpData: return "tcp-data";
    case MediaTag::TcpAck: return "tcp-ack";
    case MediaTag::CbrCross: return "cbr-cross";
  }
  return "?";
}

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Send: return "send";
    case EventKind::Enqueue: return "enqueue";
    case EventKind::Drop: return "drop";
    case EventKind::Dequeue: return "dequeue";
    case EventKind::Deliver: return "deliver";
    case EventKind::Ack: return "ack";
    case EventKind::WindowChange: return "window-change";
  }
  return "?";
}

MediaBytes Packet::media_view() const {
  if (payload.total() > 0) return payload;
  switch (tag) {
    case MediaTag::Haptic: return {size, 0, 0};
    case MediaTag::Audio: return {0, size, 0};
    case MediaTag::Video: return {0, 0, size};
    default: return {};
  }
}

FlowMetricsCollector::FlowMetricsCollector(std::vector<FlowInfo> flows, SimTime warmup,
                                           bool keep_series)
    : flows_(std::move(flows)), warmup_(warmup), keep_series_(keep_series) {
  metrics_.resize(flows_.size());
  last_delay_.assign(flows_.size(), NAN);
  for (std::size_t i = 0; i < flows_.size(); ++i) metrics_[i].flow = flows_[i].id;
}

void FlowMetricsCollector::consume(const TraceRecord& r) {
  if (r.kind != EventKind::Deliver && r.kind != EventKind::Drop) return;
  if (r.created < warmup_ || r.flow >= metrics_.size()) return;

  FlowMetrics& m = metrics_[r.flow];
  const bool delivered = r.kind == EventKind::Deliver;
  const double delay = to_seconds(r.time - r.created);

  auto account = [&](Medium medium, double bytes) {
    if (bytes <= 0.0) return;
    MediaStats& s = m.media[static_cast<std::size_t>(medium)];
    s.sent_bytes += bytes;
    if (!delivered) {
      s.dropped_bytes += bytes;
    } else {
      s.delay_min = std::min(s.delay_min, delay);
      s.delay_max = std::max(s.delay_max, delay);
    }
  };
  account(Medium::Haptic, r.media.haptic);
  account(Medium::Audio, r.media.audio);
  account(Medium::Video, r.media.video);
  if (r.media.total() == 0) account(Medium::Other, r.size);

  if (!delivered) {
    ++m.dropped;
    return;
  }
  ++m.delivered;
  m.delay_min = std::min(m.delay_min, delay);
  m.delay_max = std::max(m.delay_max, delay);
  double& last = last_delay_[r.flow];
  if (!std::isnan(last)) m.max_positive_jitter = std::max(m.max_positive_jitter, delay - last);
  last = delay;
  if (keep_series_) m.delay_series.emplace_back(to_seconds(r.created), delay);
}

const FlowMetrics& FlowMetricsCollector::result(FlowId flow) const {
  if (flow >= metrics_.size()) throw UnknownFlow("unknown flow id " + std::to_string(flow));
  return metrics_[flow];
}

FlowMetrics collect_metrics(const Trace& trace, FlowId flow, bool keep_series) {
  FlowMetricsCollector c(trace.flows, trace.warmup, keep_series);
  for (const auto& r : trace.records) c.consume(r);
  return c.result(flow);
}

}  // namespace teleqos
