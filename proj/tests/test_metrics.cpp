#include <gtest/gtest.h>

#include "teleqos/error.hpp"
#include "teleqos/metrics.hpp"

using namespace teleqos;

namespace {

constexpr SimTime kMs = 1'000'000;

TraceRecord deliver(FlowId flow, SimTime created, SimTime at, std::uint32_t size = 100,
                    MediaBytes media = {}) {
  TraceRecord r;
  r.kind = EventKind::Deliver;
  r.flow = flow;
  r.created = created;
  r.time = at;
  r.size = size;
  r.media = media;
  return r;
}

TraceRecord drop(FlowId flow, SimTime created, std::uint32_t size = 100, MediaBytes media = {}) {
  TraceRecord r = deliver(flow, created, created, size, media);
  r.kind = EventKind::Drop;
  return r;
}

Trace two_flows() {
  Trace t;
  t.flows = {{0, "a", false}, {1, "b", true}};
  return t;
}

}  // namespace

TEST(Metrics, DelayExtremesAndPositiveJitter) {
  Trace t = two_flows();
  // Delays 10, 13, 11, 15, 12 ms: largest rise 4 ms.
  const SimTime delays[] = {10, 13, 11, 15, 12};
  for (int i = 0; i < 5; ++i) t.records.push_back(deliver(0, i * kMs, i * kMs + delays[i] * kMs));
  t.records.push_back(drop(0, 6 * kMs));
  const FlowMetrics m = collect_metrics(t, 0);
  EXPECT_EQ(m.delivered, 5u);
  EXPECT_EQ(m.dropped, 1u);
  EXPECT_DOUBLE_EQ(m.delay_min, 0.010);
  EXPECT_DOUBLE_EQ(m.delay_max, 0.015);
  EXPECT_NEAR(m.max_positive_jitter, 0.004, 1e-15);
  EXPECT_NEAR(m.loss_fraction(), 1.0 / 6.0, 1e-15);
  ASSERT_EQ(m.delay_series.size(), 5u);
  EXPECT_DOUBLE_EQ(m.delay_series[3].second, 0.015);
}

TEST(Metrics, FallingDelaysHaveNoPositiveJitter) {
  Trace t = two_flows();
  for (int i = 0; i < 4; ++i) t.records.push_back(deliver(0, i * kMs, i * kMs + (20 - i) * kMs));
  EXPECT_EQ(collect_metrics(t, 0).max_positive_jitter, 0.0);
}

TEST(Metrics, SingleDeliveryHasZeroJitter) {
  Trace t = two_flows();
  t.records.push_back(deliver(1, 0, 5 * kMs));
  const FlowMetrics m = collect_metrics(t, 1);
  EXPECT_EQ(m.max_positive_jitter, 0.0);
  EXPECT_DOUBLE_EQ(m.delay_min, 0.005);
}

TEST(Metrics, WarmupExcludesEarlierPackets) {
  Trace t = two_flows();
  t.warmup = 10 * kMs;
  t.records.push_back(deliver(0, 5 * kMs, 50 * kMs));  // created before warmup, ignored
  t.records.push_back(drop(0, 9 * kMs));
  t.records.push_back(deliver(0, 10 * kMs, 20 * kMs));
  const FlowMetrics m = collect_metrics(t, 0);
  EXPECT_EQ(m.delivered, 1u);
  EXPECT_EQ(m.dropped, 0u);
  EXPECT_DOUBLE_EQ(m.delay_max, 0.010);
}

TEST(Metrics, PerMediumBytes) {
  Trace t = two_flows();
  t.records.push_back(deliver(0, 0, 10 * kMs, 137, {12, 8, 50}));
  t.records.push_back(drop(0, kMs, 137, {12, 8, 50}));
  t.records.push_back(drop(0, 2 * kMs, 90, {0, 0, 15}));
  const FlowMetrics m = collect_metrics(t, 0);
  EXPECT_DOUBLE_EQ(m.medium(Medium::Haptic).loss_fraction(), 0.5);
  EXPECT_DOUBLE_EQ(m.medium(Medium::Video).sent_bytes, 115.0);
  EXPECT_DOUBLE_EQ(m.medium(Medium::Video).dropped_bytes, 65.0);
  EXPECT_FALSE(m.medium(Medium::Other).any());
  EXPECT_DOUBLE_EQ(m.medium(Medium::Audio).delay_max, 0.010);
}

TEST(Metrics, UntaggedPacketsCountAsOther) {
  Trace t = two_flows();
  t.records.push_back(deliver(1, 0, kMs, 578));
  const FlowMetrics m = collect_metrics(t, 1);
  EXPECT_DOUBLE_EQ(m.medium(Medium::Other).sent_bytes, 578.0);
  EXPECT_FALSE(m.medium(Medium::Haptic).any());
}

TEST(Metrics, IgnoresQueueEvents) {
  Trace t = two_flows();
  TraceRecord r = deliver(0, 0, kMs);
  r.kind = EventKind::Enqueue;
  t.records.push_back(r);
  r.kind = EventKind::Send;
  t.records.push_back(r);
  EXPECT_EQ(collect_metrics(t, 0).delivered, 0u);
}

TEST(Metrics, UnknownFlow) {
  EXPECT_THROW(collect_metrics(two_flows(), 2), UnknownFlow);
}
