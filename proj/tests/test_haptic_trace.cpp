#include <gtest/gtest.h>

#include <sstream>

#include "teleqos/error.hpp"
#include "teleqos/haptic_trace.hpp"

using namespace teleqos;

TEST(HapticTrace, SamplesOnMillisecondGrid) {
  const auto s = synth_haptic_trace(SignalSpec{}, 0.5);
  ASSERT_EQ(s.size(), 500u);
  EXPECT_DOUBLE_EQ(s[0].time, 0.0);
  EXPECT_DOUBLE_EQ(s[499].time, 0.499);
  EXPECT_TRUE(synth_haptic_trace(SignalSpec{}, 0.0).empty());
  EXPECT_THROW(synth_haptic_trace(SignalSpec{}, -1.0), InvalidParams);
}

TEST(HapticTrace, DeterministicPerSeed) {
  for (SignalKind kind : {SignalKind::SumOfSinusoids, SignalKind::FilteredNoise, SignalKind::ContactBurst}) {
    SignalSpec a;
    a.kind = kind;
    a.seed = 5;
    SignalSpec b = a;
    b.seed = 6;
    EXPECT_EQ(synth_haptic_trace(a, 2.0), synth_haptic_trace(a, 2.0));
    EXPECT_NE(synth_haptic_trace(a, 2.0), synth_haptic_trace(b, 2.0));
  }
}

TEST(HapticTrace, ContactSpansAlternateAndCoverDuration) {
  SignalSpec spec;
  spec.seed = 9;
  const auto spans = contact_spans(spec, 60.0);
  ASSERT_GE(spans.size(), 2u);
  EXPECT_DOUBLE_EQ(spans.front().start, 0.0);
  EXPECT_FALSE(spans.front().contact);
  EXPECT_DOUBLE_EQ(spans.back().end, 60.0);
  for (std::size_t i = 1; i < spans.size(); ++i) {
    EXPECT_DOUBLE_EQ(spans[i].start, spans[i - 1].end);
    EXPECT_NE(spans[i].contact, spans[i - 1].contact);
  }
}

TEST(HapticTrace, ContactSpansCarryTheMotion) {
  SignalSpec spec;
  spec.seed = 2;
  const auto samples = synth_haptic_trace(spec, 30.0);
  const auto spans = contact_spans(spec, 30.0);
  double quiet_swing = 0.0, contact_swing = 0.0;
  std::size_t span = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const std::size_t prev = span;
    while (samples[i].time >= spans[span].end) ++span;
    if (span != prev) continue;  // span edges jump by design
    const double step = std::abs(samples[i].value[0] - samples[i - 1].value[0]);
    (spans[span].contact ? contact_swing : quiet_swing) =
        std::max(spans[span].contact ? contact_swing : quiet_swing, step);
  }
  EXPECT_GT(contact_swing, 5.0 * quiet_swing);
}

TEST(HapticTrace, CsvRoundTrip) {
  SignalSpec spec;
  spec.kind = SignalKind::FilteredNoise;
  const auto samples = synth_haptic_trace(spec, 1.0);
  std::stringstream buf;
  write_haptic_csv(buf, samples);
  EXPECT_EQ(buf.str().substr(0, 17), "time_ms,fx,fy,fz\n");
  const auto back = read_haptic_csv(buf);
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_NEAR(back[i].time, samples[i].time, 1e-15);
    EXPECT_EQ(back[i].value, samples[i].value);
  }
}

TEST(HapticTrace, CsvErrorsCarryPosition) {
  std::istringstream bad_header("t,fx,fy,fz\n");
  EXPECT_THROW(read_haptic_csv(bad_header), ParseError);
  std::istringstream bad_cell("time_ms,fx,fy,fz\n0,1,2,3\n1,1,x,3\n");
  try {
    read_haptic_csv(bad_cell);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
  }
  std::istringstream short_row("time_ms,fx,fy,fz\n0,1,2\n");
  EXPECT_THROW(read_haptic_csv(short_row), ParseError);
}

TEST(HapticTrace, SignalKindNames) {
  for (SignalKind k : {SignalKind::SumOfSinusoids, SignalKind::FilteredNoise, SignalKind::ContactBurst}) {
    EXPECT_EQ(parse_signal_kind(signal_kind_name(k)), k);
  }
  EXPECT_THROW(parse_signal_kind("square"), InvalidParams);
}
