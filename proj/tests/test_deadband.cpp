#include <gtest/gtest.h>

#include "support/cases.hpp"
#include "teleqos/deadband.hpp"
#include "teleqos/error.hpp"

using namespace teleqos;

TEST(Deadband, FirstSampleIsSignificant) {
  DeadbandState db(0.1);
  EXPECT_TRUE(db.offer({1.0, 0.0, 0.0}));
  ASSERT_TRUE(db.reference().has_value());
}

TEST(Deadband, RelativeThresholdIsInclusive) {
  DeadbandState db(0.1);
  db.offer({1.0, 0.0, 0.0});
  EXPECT_FALSE(db.offer({1.09, 0.0, 0.0}));
  EXPECT_FALSE(db.offer({1.0, 0.099, 0.0}));
  EXPECT_TRUE(db.offer({1.0, 0.0, 0.1}));
  // Reference moved to (1, 0, 0.1).
  EXPECT_EQ((*db.reference())[2], 0.1);
  EXPECT_FALSE(db.offer({1.0, 0.0, 0.15}));
}

TEST(Deadband, ZeroReference) {
  DeadbandState db(0.1);
  db.offer({0.0, 0.0, 0.0});
  EXPECT_FALSE(db.offer({0.0, 0.0, kDeadbandZeroEpsilon / 2}));
  EXPECT_TRUE(db.offer({0.0, 0.01, 0.0}));
}

TEST(Deadband, RejectsBadK) {
  EXPECT_THROW(DeadbandState(0.0), InvalidParams);
  EXPECT_THROW(DeadbandState(1.0), InvalidParams);
  EXPECT_THROW(deadband_filter({}, -0.1), InvalidParams);
}

TEST(Deadband, DroppedSamplesStayInsideTheirBand) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(51, k);
    SignalSpec spec;
    spec.kind = static_cast<SignalKind>(k % 3);
    spec.seed = rng();
    const double kk = gen::uniform(rng, 0.02, 0.5);
    const auto samples = synth_haptic_trace(spec, 0.2);
    const auto flags = deadband_filter(samples, kk);
    ASSERT_EQ(flags.size(), samples.size());
    ASSERT_TRUE(flags.front());
    ForceVector ref = samples.front().value;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const ForceVector& x = samples[i].value;
      const double dist = norm({x[0] - ref[0], x[1] - ref[1], x[2] - ref[2]});
      if (flags[i]) {
        ref = x;
      } else if (norm(ref) > kDeadbandZeroEpsilon) {
        ASSERT_LT(dist, kk * norm(ref)) << "case " << k << " sample " << i;
      }
    }
  }
}

TEST(Deadband, WiderBandSendsFewerSamples) {
  SignalSpec spec;
  const auto samples = synth_haptic_trace(spec, 20.0);
  std::size_t last = samples.size() + 1;
  for (double kk : {0.02, 0.05, 0.1, 0.2}) {
    const auto flags = deadband_filter(samples, kk);
    const auto sent = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
    EXPECT_LT(sent, last);
    last = sent;
  }
}
