#include "teleqos/validation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>

#include "teleqos/error.hpp"
#include "teleqos/simulator.hpp"

namespace teleqos {
namespace {

double to_base(SweepVar var, double v) {
  switch (var) {
    case SweepVar::RateTotal:
    case SweepVar::Mu: return mbps(v);
    case SweepVar::Buffer: return kB(v);
    case SweepVar::Tau: return ms(v);
  }
  return v;
}

// The flow whose packets the row reports on.
std::optional<std::size_t> observed_flow(const ScenarioConfig& c) {
  for (std::size_t i = 0; i < c.flows.size(); ++i) {
    if (c.flows[i].kind == FlowKind::Haptic) return i;
  }
  for (std::size_t i = 0; i < c.flows.size(); ++i) {
    if (c.flows[i].kind == FlowKind::Cbr) return i;
  }
  return std::nullopt;
}

ScenarioConfig with_nack(ScenarioConfig c, int n_ack) {
  for (auto& f : c.flows) {
    if (f.kind == FlowKind::Tcp) f.n_ack = n_ack;
  }
  return c;
}

}  // namespace

const char* sweep_var_name(SweepVar v) {
  switch (v) {
    case SweepVar::RateTotal: return "R";
    case SweepVar::Mu: return "mu";
    case SweepVar::Buffer: return "B";
    case SweepVar::Tau: return "tau";
  }
  return "?";
}

SweepVar parse_sweep_var(std::string_view name) {
  if (name == "R") return SweepVar::RateTotal;
  if (name == "mu") return SweepVar::Mu;
  if (name == "B" || name == "buffer") return SweepVar::Buffer;
  if (name == "tau") return SweepVar::Tau;
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) + "' (R, mu, B, tau)");
}

Sweep parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("sweep must look like VAR=a,b,c");
  Sweep s;
  s.var = parse_sweep_var(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || p != item.data() + item.size()) {
      throw std::invalid_argument("bad sweep value '" + std::string(item) + "'");
    }
    s.grid.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return s;
}

double relative_error(double analytic, double simulated) {
  if (analytic == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(analytic - simulated) / std::abs(analytic);
}

ScenarioConfig apply_sweep_point(const ScenarioConfig& base, SweepVar var, double value) {
  ScenarioConfig c = base;
  const double v = to_base(var, value);
  switch (var) {
    case SweepVar::Mu: c.mu = v; break;
    case SweepVar::Buffer: c.buf = v; break;
    case SweepVar::Tau: c.tau = v; break;
    case SweepVar::RateTotal: {
      auto cross = std::find_if(c.flows.begin(), c.flows.end(),
                                [](const FlowSpec& f) { return f.kind == FlowKind::Cbr; });
      const double others = c.cbr_rate_total() - (cross != c.flows.end() ? cross->rate : 0.0);
      const double need = v - others;
      if (need < -1e-9 * v) {
        throw ConfigError("sweep.R", "value below the rate of the fixed flows");
      }
      if (need <= 1e-9 * v) {
        if (cross != c.flows.end()) c.flows.erase(cross);
      } else if (cross != c.flows.end()) {
        cross->rate = need;
      } else {
        FlowSpec f;
        f.name = "cross";
        f.kind = FlowKind::Cbr;
        f.packet = 150.0;
        f.rate = need;
        c.flows.push_back(f);
      }
      break;
    }
  }
  c.validate();
  return c;
}

ValidationRow analytic_row(const ScenarioConfig& base, SweepVar var, double control, int n_ack) {
  const ScenarioConfig config = apply_sweep_point(base, var, control);
  ValidationRow row;
  row.var = var;
  row.control = control;
  row.n_ack = n_ack;
  NetworkParams net = config.network_params();
  net.n_ack = n_ack;
  const double rate = config.cbr_rate_total();
  row.validity = validity_check(net, rate);
  const CbrAggregate cbr = CbrAggregate::of(net, rate);
  const DelayBounds d = delay_bounds(net, cbr);
  row.d_min_a = d.d_min;
  row.d_max_a = d.d_max;
  if (config.haptic_flow()) {
    row.jitter_a = haptic_jitter_max(net, config.haptic_spec(), n_ack);
  } else if (const auto idx = observed_flow(config)) {
    row.jitter_a = cbr_jitter_max(net, cbr, config.flows[*idx].gap());
  }
  return row;
}

std::vector<ValidationRow> run_validation(const ScenarioConfig& config, const Sweep& sweep,
                                          const std::vector<int>& nack_grid) {
  if (sweep.grid.empty()) throw InvalidParams("empty sweep grid");
  if (nack_grid.empty()) throw InvalidParams("empty n_ack grid");
  for (int n : nack_grid) {
    if (n < 1) throw InvalidParams("n_ack must be >= 1");
  }
  if (!observed_flow(config)) throw ConfigError("flow", "validation needs a haptic or cbr flow");

  // Build every point up front so configuration errors surface before any run.
  struct Job {
    ScenarioConfig cfg;
    double control;
    int n_ack;
  };
  std::vector<Job> jobs;
  for (double x : sweep.grid) {
    const ScenarioConfig point = apply_sweep_point(config, sweep.var, x);
    if (!(point.cbr_rate_total() < point.mu)) {
      throw ConfigError("sweep", "grid point violates R < mu");
    }
    for (int n : nack_grid) jobs.push_back({with_nack(point, n), x, n});
  }

  std::vector<std::future<ValidationRow>> futures;
  futures.reserve(jobs.size());
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job, &sweep] {
      ValidationRow row = analytic_row(job.cfg, sweep.var, job.control, job.n_ack);
      const Simulator sim(job.cfg);
      const RunResult res = sim.run();
      const FlowId id = static_cast<FlowId>(*observed_flow(job.cfg));
      const FlowMetrics& m = res.flow_metrics(id);
      row.d_min_s = std::isfinite(m.delay_min) ? m.delay_min : 0.0;
      row.d_max_s = m.delay_max;
      row.jitter_s = m.max_positive_jitter;
      row.haptic_delivered = m.delivered;
      row.haptic_dropped = m.dropped;
      row.err_d_min = relative_error(row.d_min_a, row.d_min_s);
      row.err_d_max = relative_error(row.d_max_a, row.d_max_s);
      row.err_jitter = relative_error(row.jitter_a, row.jitter_s);
      return row;
    }));
  }
  std::vector<ValidationRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  std::stable_sort(rows.begin(), rows.end(), [](const ValidationRow& a, const ValidationRow& b) {
    return a.control != b.control ? a.control < b.control : a.n_ack < b.n_ack;
  });
  return rows;
}

}  // namespace teleqos
