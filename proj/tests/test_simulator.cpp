#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "support/random_scenario.hpp"
#include "teleqos/analytic.hpp"
#include "teleqos/error.hpp"
#include "teleqos/scenario.hpp"
#include "teleqos/simulator.hpp"
#include "teleqos/trace_csv.hpp"
#include "teleqos/units.hpp"

using namespace teleqos;

using gen::cbr_flow;
using gen::link;
using gen::random_scenario;
using gen::tcp_flow;
using gen::trace_csv;

TEST(Simulator, LoneCbrFlowSeesConstantDelay) {
  ScenarioConfig c = link(mbps(6), ms(8), kB(14));
  c.flows.push_back(cbr_flow("cross", mbps(3), 150));
  c.run.duration = 2.0;
  c.run.warmup = 0.0;
  const RunResult r = Simulator(c).run();
  const FlowMetrics& m = r.flow_metrics(0);
  EXPECT_EQ(m.dropped, 0u);
  EXPECT_EQ(r.counters[0].created, 5000u);
  EXPECT_EQ(m.delivered, 5000u - r.counters[0].in_flight);
  EXPECT_DOUBLE_EQ(m.delay_min, 0.008 + 150.0 / 750000.0);
  EXPECT_DOUBLE_EQ(m.delay_max, m.delay_min);
  EXPECT_EQ(m.max_positive_jitter, 0.0);
}

TEST(Simulator, DepartureBeforeSameInstantArrival) {
  // Gap equals transmission time, so each arrival meets a completing packet.
  // The buffer holds a single packet: any other ordering would drop.
  ScenarioConfig c = link(mbps(6), ms(1), 750);
  c.flows.push_back(cbr_flow("line", mbps(6), 750));
  c.run.duration = 1.0;
  c.run.warmup = 0.0;
  const RunResult r = Simulator(c).run();
  EXPECT_EQ(r.counters[0].dropped, 0u);
  EXPECT_EQ(r.max_queue, 750u);
}

TEST(Simulator, ZeroDurationGivesEmptyMetrics) {
  const Simulator sim(baseline_scenario());
  const RunResult r = sim.run(0.0, 0.0);
  EXPECT_EQ(r.events, 0u);
  for (const auto& m : r.metrics) {
    EXPECT_EQ(m.delivered, 0u);
    EXPECT_EQ(m.dropped, 0u);
  }
}

TEST(Simulator, RejectsBadRunWindow) {
  const Simulator sim(baseline_scenario());
  EXPECT_THROW(sim.run(1.0, 1.0), InvalidParams);
  EXPECT_THROW(sim.run(1.0, -0.5), InvalidParams);
}

TEST(Simulator, RejectsOverloadWithTcp) {
  EXPECT_THROW(Simulator(baseline_scenario(mbps(6))), ConfigError);
}

TEST(Simulator, CbrOnlyRunHasNoCycles) {
  ScenarioConfig c = link(mbps(6), ms(8), kB(14));
  c.flows.push_back(cbr_flow("cross", mbps(3), 150));
  c.run.duration = 5.0;
  c.run.warmup = 1.0;
  const RunResult r = Simulator(c).run();
  EXPECT_THROW(r.cycles(), InsufficientCycles);
}

TEST(Simulator, UnknownFlowId) {
  const RunResult r = Simulator(baseline_scenario()).run(1.0, 0.0);
  EXPECT_THROW(r.flow_metrics(17), UnknownFlow);
}

TEST(Simulator, BaseSettingRespectsDelayBoundAndKeepsQueueBusy) {
  ScenarioConfig c = baseline_scenario();
  const RunResult r = Simulator(c).run(60.0, 20.0);
  const FlowMetrics& h = r.flow_metrics(1);
  EXPECT_GT(h.delivered, 39000u);
  EXPECT_LE(h.delay_max, c.tau + c.buf / c.mu + 1e-9);
  EXPECT_GT(h.delay_min, c.tau);
  EXPECT_GT(r.min_queue_after_warmup, 0u);
  EXPECT_LE(r.max_queue, static_cast<std::uint64_t>(c.buf));

  const CycleStats s = r.cycles();
  ASSERT_GE(s.cycles.size(), 2u);
  for (const auto& cyc : s.cycles) {
    // The queue fills to within one segment of B in every cycle.
    EXPECT_GE(static_cast<double>(cyc.q_max), c.buf - 578.0);
    EXPECT_LE(static_cast<double>(cyc.q_max), c.buf);
  }
  EXPECT_FALSE(s.non_stationary);
}

TEST(Simulator, ConservationAndQueueBoundOnRandomScenarios) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(41, k);
    const ScenarioConfig c = random_scenario(rng);
    RunResult r;
    ASSERT_NO_THROW(r = Simulator(c).run()) << "case " << k;  // invariant checks on every dequeue
    ASSERT_LE(r.max_queue, static_cast<std::uint64_t>(c.buf)) << "case " << k;
    for (std::size_t f = 0; f < r.counters.size(); ++f) {
      const FlowCounters& n = r.counters[f];
      ASSERT_EQ(n.created, n.delivered + n.dropped + n.in_flight) << "case " << k << " flow " << f;
    }
  }
}

TEST(Simulator, TraceIsByteIdenticalAcrossRuns) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(42, k);
    ScenarioConfig c = random_scenario(rng);
    c.run.duration = std::min(c.run.duration, 0.15);
    const std::string a = trace_csv(Simulator(c));
    const std::string b = trace_csv(Simulator(c));
    ASSERT_EQ(a, b) << "case " << k;
  }
}

TEST(Simulator, StoredRecordsMatchSink) {
  ScenarioConfig c = baseline_scenario();
  const Simulator sim(c);
  RunOptions opt;
  opt.keep_records = true;
  std::size_t seen = 0;
  opt.sink = [&](const TraceRecord&) { ++seen; };
  const RunResult r = sim.run(2.0, 0.0, opt);
  EXPECT_EQ(r.trace.records.size(), seen);
  EXPECT_GT(seen, 0u);
  for (std::size_t i = 1; i < r.trace.records.size(); ++i) {
    ASSERT_LE(r.trace.records[i - 1].time, r.trace.records[i].time);
  }
}

TEST(Simulator, AdaptiveFlowEmitsMuxSchedule) {
  const ScenarioConfig c = load_scenario_file(TELEQOS_SCENARIO_DIR "/adaptive.scn");
  const Simulator sim(c);
  const auto* sched = sim.mux_schedule(0);
  ASSERT_NE(sched, nullptr);
  const RunResult r = sim.run(10.0, 0.0);
  std::size_t emitted = 0;
  for (const auto& p : *sched) emitted += p.time < 10.0;
  EXPECT_EQ(r.counters[0].created, emitted);
  EXPECT_EQ(sim.mux_schedule(1), nullptr);
}

TEST(Simulator, QueueReachesCapacityInEveryCycle) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = gen::rng_for(43, k);
    const ScenarioConfig c = gen::random_sawtooth(rng);
    const RunResult r = Simulator(c).run();
    CycleStats s;
    ASSERT_NO_THROW(s = r.cycles()) << "case " << k;
    const double largest = std::max(c.flows[0].packet, c.flows[1].packet);
    for (const auto& cyc : s.cycles) {
      ASSERT_LE(static_cast<double>(cyc.q_max), c.buf) << "case " << k;
      ASSERT_GT(static_cast<double>(cyc.q_max), c.buf - largest) << "case " << k;
    }
  }
}
