#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "support/cases.hpp"
#include "teleqos/scenario.hpp"
#include "teleqos/simulator.hpp"
#include "teleqos/trace_csv.hpp"

namespace teleqos::gen {

inline FlowSpec cbr_flow(const std::string& name, double rate, double packet, double phase = 0.0) {
  FlowSpec f;
  f.name = name;
  f.kind = FlowKind::Cbr;
  f.rate = rate;
  f.packet = packet;
  f.phase = phase;
  return f;
}

inline FlowSpec tcp_flow(int n_ack = 1, double packet = 578) {
  FlowSpec f;
  f.name = "tcp";
  f.kind = FlowKind::Tcp;
  f.packet = packet;
  f.n_ack = n_ack;
  return f;
}

inline ScenarioConfig link(double mu, double tau, double buf) {
  ScenarioConfig c;
  c.mu = mu;
  c.tau = tau;
  c.buf = buf;
  return c;
}

/// Short run: an optional TCP source plus one to three CBR flows. Without
/// TCP the CBR load may exceed capacity.
inline ScenarioConfig random_scenario(Rng& rng) {
  ScenarioConfig c = link(mbps(uniform(rng, 1.0, 20.0)), ms(uniform(rng, 0.5, 20.0)), 0.0);
  const bool with_tcp = uniform_int(rng, 0, 3) > 0;
  c.buf = std::round(std::max(3000.0, c.mu * c.tau * uniform(rng, 0.5, 4.0)));
  if (with_tcp) c.flows.push_back(tcp_flow(uniform_int(rng, 1, 3), std::round(uniform(rng, 200, 1500))));
  const int n_cbr = uniform_int(rng, 1, 3);
  const double load = uniform(rng, 0.05, with_tcp ? 0.9 : 1.3);
  for (int i = 0; i < n_cbr; ++i) {
    c.flows.push_back(cbr_flow("c" + std::to_string(i), c.mu * load / n_cbr,
                               std::round(uniform(rng, 40, 1500)), uniform(rng, 0.0, 0.01)));
  }
  c.run.duration = uniform(rng, 0.05, 0.6);
  c.run.warmup = 0.0;
  c.run.seed = rng();
  return c;
}

/// TCP in the full-utilization regime with a small bandwidth-delay product,
/// so a few simulated seconds hold many congestion cycles.
inline ScenarioConfig random_sawtooth(Rng& rng) {
  ScenarioConfig c = link(mbps(uniform(rng, 1.0, 4.0)), ms(uniform(rng, 1.0, 5.0)), 0.0);
  const double s = std::round(uniform(rng, 300, 1000));
  c.buf = std::round(std::max(c.mu * c.tau * 2.0 * uniform(rng, 1.2, 3.0), 10.0 * s));
  c.flows.push_back(tcp_flow(uniform_int(rng, 1, 2), s));
  c.flows.push_back(cbr_flow("cbr", c.mu * uniform(rng, 0.0, 0.6) + 1.0,
                             std::round(uniform(rng, 60, 300)), uniform(rng, 0.0, 0.01)));
  c.run.duration = 8.0;
  c.run.warmup = 1.0;
  c.run.seed = rng();
  return c;
}

inline std::string trace_csv(const Simulator& sim) {
  std::ostringstream out;
  write_trace_csv_header(out);
  RunOptions opt;
  opt.sink = [&](const TraceRecord& r) { write_trace_csv_row(out, r); };
  sim.run(opt);
  return out.str();
}

}  // namespace teleqos::gen
