#include <gtest/gtest.h>

#include <numeric>

#include "support/cases.hpp"
#include "teleqos/deadband.hpp"
#include "teleqos/error.hpp"
#include "teleqos/rate.hpp"
#include "teleqos/vh_mux.hpp"

using namespace teleqos;

namespace {

std::vector<HapticSample> flat(std::size_t n) {
  std::vector<HapticSample> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i].time = static_cast<double>(i) * kHapticTick;
  return s;
}

}  // namespace

TEST(VhMux, VideoScheduleSumsToRate) {
  std::uint64_t total = 0;
  for (std::int64_t t = 0; t < 1000; ++t) total += video_bytes_in_tick(50000.0, t);
  EXPECT_EQ(total, 50000u);
  EXPECT_EQ(video_bytes_in_tick(50000.0, 17), 50u);
  // 30 kbit/s = 3.75 B per tick alternates 3 and 4 bytes.
  std::uint64_t four = 0;
  for (std::int64_t t = 0; t < 4; ++t) four += video_bytes_in_tick(3750.0, t);
  EXPECT_EQ(four, 15u);
}

TEST(VhMux, SignificantPacketsAre137Bytes) {
  const auto samples = flat(10);
  const std::vector<bool> all(10, true);
  const auto pkts = vh_mux(samples, all, MuxConfig{});
  ASSERT_EQ(pkts.size(), 10u);
  for (const auto& p : pkts) {
    EXPECT_EQ(p.kind, MuxPacketKind::SignificantHaptic);
    EXPECT_EQ(p.size(), 137u);
  }
}

TEST(VhMux, InsignificantRunsBecomeChunks) {
  const auto samples = flat(40);
  std::vector<bool> sig(40, false);
  sig[0] = true;
  sig[20] = true;
  const auto pkts = vh_mux(samples, sig, MuxConfig{});
  // 0: haptic; 1..15: full chunk; 16..19 flushed ahead of 20; 21..35 full; 36..39 trailing.
  ASSERT_EQ(pkts.size(), 6u);
  EXPECT_EQ(pkts[1].kind, MuxPacketKind::VideoChunk);
  EXPECT_EQ(pkts[1].video_bytes, 750u);
  EXPECT_DOUBLE_EQ(pkts[1].oldest_video, 0.001);
  EXPECT_DOUBLE_EQ(pkts[1].time, 0.015);
  EXPECT_EQ(pkts[2].video_bytes, 200u);
  EXPECT_DOUBLE_EQ(pkts[2].time, 0.020);
  EXPECT_EQ(pkts[3].kind, MuxPacketKind::SignificantHaptic);
  EXPECT_EQ(pkts[5].video_bytes, 200u);
}

TEST(VhMux, ConservesVideoAndHapticBytes) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(61, k);
    const std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 400));
    const auto samples = flat(n);
    std::vector<bool> sig(n);
    const double p = gen::uniform(rng, 0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) sig[i] = gen::uniform(rng, 0.0, 1.0) < p;
    MuxConfig cfg;
    cfg.video_rate = gen::uniform(rng, 100.0, 200000.0);
    cfg.chunk_ticks = gen::uniform_int(rng, 1, 30);
    const auto pkts = vh_mux(samples, sig, cfg);

    std::uint64_t video = 0, expected_video = 0, haptic_pkts = 0;
    for (std::size_t i = 0; i < n; ++i) expected_video += video_bytes_in_tick(cfg.video_rate, static_cast<std::int64_t>(i));
    double last_time = -1.0;
    for (const auto& pk : pkts) {
      video += pk.video_bytes;
      haptic_pkts += pk.kind == MuxPacketKind::SignificantHaptic;
      ASSERT_GE(pk.time, last_time);
      ASSERT_LE(pk.oldest_video, pk.time);
      if (pk.kind == MuxPacketKind::VideoChunk) {
        ASSERT_LT(pk.time - pk.oldest_video, cfg.chunk_ticks * kHapticTick - 1e-12);
      }
      last_time = pk.time;
    }
    ASSERT_EQ(video, expected_video) << "case " << k;
    ASSERT_EQ(haptic_pkts, static_cast<std::uint64_t>(std::count(sig.begin(), sig.end(), true)));
  }
}

TEST(VhMux, RejectsBadInput) {
  const auto samples = flat(3);
  EXPECT_THROW(vh_mux(samples, {true, false}, MuxConfig{}), InvalidParams);
  MuxConfig cfg;
  cfg.chunk_ticks = 0;
  EXPECT_THROW(vh_mux(samples, {true, false, true}, cfg), InvalidParams);
  cfg = MuxConfig{};
  cfg.video_rate = 0.0;
  EXPECT_THROW(vh_mux(samples, {true, false, true}, cfg), InvalidParams);
}

TEST(Rate, SlidingWindowOverConstantStream) {
  std::vector<TimedBytes> pkts;
  for (int i = 0; i < 1000; ++i) pkts.push_back({i * 1e-3, 137.0});
  const RateSeries s = instantaneous_rate(pkts, 0.1, 1e-3);
  EXPECT_NEAR(s.peak, 137000.0, 1e-6);
  EXPECT_NEAR(s.mean, 137000.0, 200.0);
  EXPECT_DOUBLE_EQ(s.window, 0.1);
  ASSERT_EQ(s.time.size(), s.rate.size());
  EXPECT_LE(s.rate.front(), s.peak);
}

TEST(Rate, PeakFindsBurst) {
  std::vector<TimedBytes> pkts{{0.0, 100.0}, {0.5, 1000.0}, {0.52, 1000.0}, {1.0, 100.0}};
  const RateSeries s = instantaneous_rate(pkts, 0.1, 1e-3);
  EXPECT_NEAR(s.peak, 20000.0, 1e-6);
  EXPECT_THROW(instantaneous_rate(std::span<const TimedBytes>{}), EmptyStream);
}

TEST(Rate, DeadbandStreamSitsBetweenIdleAndFullRate) {
  SignalSpec spec;
  spec.seed = 3;
  const auto samples = synth_haptic_trace(spec, 30.0);
  const auto pkts = vh_mux(samples, deadband_filter(samples, 0.1), MuxConfig{});
  const RateSeries s = instantaneous_rate(pkts);
  EXPECT_GT(s.mean, 50000.0);   // video alone
  EXPECT_LT(s.mean, 137000.0);  // every sample significant
  EXPECT_GT(s.peak, s.mean);
  EXPECT_LE(s.peak, 137000.0 * 1.01);
}
