#include <gtest/gtest.h>

#include <cmath>

#include "support/ack_timeline.hpp"
#include "support/cases.hpp"
#include "teleqos/analytic.hpp"
#include "teleqos/units.hpp"

using namespace teleqos;

using gen::ack_timeline;
using gen::AckTimeline;

TEST(MTcpOracle, GridOfTwoHundredPointsPerAckFactor) {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 200; ++k) {
      const gen::OraclePoint p = gen::oracle_grid_point(n, k);
      const AckTimeline ref = ack_timeline(p.net, p.rate, p.window);
      ASSERT_GT(ref.closest_tie, 1e-12);
      EXPECT_EQ(m_tcp_max(p.net, CbrAggregate::of(p.net, p.rate), p.window), ref.packets)
          << "n=" << n << " mu=" << to_mbps(p.net.mu) << " R=" << to_mbps(p.rate)
          << " T=" << to_ms(p.window);
    }
  }
}

TEST(MTcpOracle, RandomNetworks) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(21, k);
    const NetworkParams net = gen::full_utilization_net(rng);
    const CbrAggregate cbr = gen::random_load(rng, net);
    const double window = gen::uniform(rng, 1e-5, 0.05);
    const AckTimeline ref = ack_timeline(net, cbr.rate_total, window);
    if (ref.closest_tie < 1e-12) continue;
    ASSERT_EQ(m_tcp_max(net, cbr, window), ref.packets) << "case " << k;
  }
}
