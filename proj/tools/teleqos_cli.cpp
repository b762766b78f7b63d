// teleqos: analytic QoS bounds and packet-level validation for CBR media
// sharing a droptail bottleneck with TCP NewReno.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "teleqos/compliance.hpp"
#include "teleqos/error.hpp"
#include "teleqos/rate.hpp"
#include "teleqos/report.hpp"
#include "teleqos/scenario.hpp"
#include "teleqos/simulator.hpp"
#include "teleqos/trace_csv.hpp"
#include "teleqos/units.hpp"
#include "teleqos/validation.hpp"

using namespace teleqos;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitQosFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
};

// Seconds, either bare ("60") or with a time unit ("500 ms").
double parse_seconds(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  return parse_quantity_as(text, Dimension::Time);
}

ScenarioConfig load(const std::string& path, const Globals& g) {
  ScenarioConfig cfg = load_scenario_file(path);
  if (g.seed) cfg.run.seed = *g.seed;
  return cfg;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("out", "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_analyze(const Globals& g, const std::string& config, const std::string& out_path) {
  const ScenarioConfig cfg = load(config, g);
  const NetworkParams net = cfg.network_params();
  const ComplianceReport report = qos_check(net, cfg.haptic_spec(), cfg.qos, cfg.mux, net.n_ack);
  Output out(out_path);
  emit_report(out.stream(), report, parse_report_format(g.format));
  return report.overall_pass() ? kExitOk : kExitQosFail;
}

int cmd_simulate(const Globals& g, const std::string& config, const std::string& duration_text,
                 const std::string& warmup_text, const std::string& trace_path) {
  ScenarioConfig cfg = load(config, g);
  const double duration = parse_seconds(duration_text);
  if (!(duration > 0.0)) throw ConfigError("duration", "must be > 0");
  cfg.run.duration = duration;
  if (!warmup_text.empty()) {
    cfg.run.warmup = parse_seconds(warmup_text);
  } else if (cfg.run.warmup && *cfg.run.warmup >= duration) {
    cfg.run.warmup.reset();
  }
  const Simulator sim(cfg);

  RunOptions opt;
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw ConfigError("trace", "cannot write " + trace_path);
    write_trace_csv_header(trace);
    opt.sink = [&trace](const TraceRecord& r) { write_trace_csv_row(trace, r); };
  }
  const RunResult result = sim.run(opt);
  const ReportFormat fmt = parse_report_format(g.format);
  emit_run_summary(std::cout, sim, result, fmt);

  // Measured QoS of the telehaptic stream, if there is one.
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < cfg.flows.size() && !idx; ++i) {
    if (cfg.flows[i].kind == FlowKind::Haptic || cfg.flows[i].kind == FlowKind::Adaptive) idx = i;
  }
  if (!idx) return kExitOk;
  const FlowMetrics& m = result.flow_metrics(static_cast<FlowId>(*idx));
  ComplianceReport report;
  report.qos = cfg.qos;
  auto verdict = [](bool ok) { return ok ? Verdict::Pass : Verdict::Fail; };
  report.conditions.push_back({"haptic_delay", verdict(m.delay_max < cfg.qos.haptic.delay),
                               m.delay_max, cfg.qos.haptic.delay, true, "simulated maximum delay (s)"});
  report.conditions.push_back({"haptic_jitter",
                               verdict(m.max_positive_jitter < cfg.qos.haptic.jitter),
                               m.max_positive_jitter, cfg.qos.haptic.jitter, true,
                               "simulated maximum positive jitter (s)"});
  auto loss = [&](Medium md) -> std::optional<double> {
    const MediaStats& s = m.medium(md);
    return s.any() ? std::optional<double>(s.loss_fraction()) : std::nullopt;
  };
  add_loss_verdicts(report, loss(Medium::Haptic), loss(Medium::Audio), loss(Medium::Video));
  if (fmt == ReportFormat::Text) {
    std::cout << '\n';
    emit_report(std::cout, report, fmt);
  }
  return report.overall_pass() ? kExitOk : kExitQosFail;
}

std::vector<int> parse_nack(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v < 1) {
      throw std::invalid_argument("bad n_ack value '" + item + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

int cmd_validate(const Globals& g, const std::string& config, const std::string& sweep_text,
                 const std::string& nack_text) {
  const ScenarioConfig cfg = load(config, g);
  const Sweep sweep = parse_sweep(sweep_text);
  const std::vector<int> nack = nack_text.empty() ? std::vector<int>{1, 2} : parse_nack(nack_text);
  const auto rows = run_validation(cfg, sweep, nack);
  emit_report(std::cout, rows, parse_report_format(g.format));
  return kExitOk;
}

int cmd_rates(const Globals& g, const std::string& config, double window_ms) {
  const ScenarioConfig cfg = load(config, g);
  const FlowSpec* flow = cfg.adaptive_flow();
  if (!flow) throw ConfigError("flow", "rates needs an adaptive flow");
  const auto packets = adaptive_flow_packets(*flow, cfg.run.duration, cfg.run.seed);
  const RateSeries series = instantaneous_rate(packets, ms(window_ms));
  emit_rate_series(std::cout, series, parse_report_format(g.format));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoS bounds and simulation for CBR media over a shared TCP bottleneck"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Override the scenario seed");

  std::string config, out_path, duration, warmup, trace_path, sweep, nack;
  double window_ms = 100.0;

  auto* analyze = app.add_subcommand("analyze", "Analytic compliance report");
  analyze->add_option("--config", config, "Scenario file")->required();
  analyze->add_option("--out", out_path, "Write the report here");

  auto* simulate = app.add_subcommand("simulate", "Packet-level simulation");
  simulate->add_option("--config", config, "Scenario file")->required();
  simulate->add_option("--duration", duration, "Simulated seconds")->required();
  simulate->add_option("--warmup", warmup, "Seconds excluded from statistics");
  simulate->add_option("--trace", trace_path, "Write the event trace CSV here");

  auto* validate = app.add_subcommand("validate", "Analytic vs simulated sweep");
  validate->add_option("--config", config, "Scenario file")->required();
  validate->add_option("--sweep", sweep, "VAR=a,b,c with VAR in R, mu (Mbps), B (kB), tau (ms)")
      ->required();
  validate->add_option("--nack", nack, "Cumulative-ACK factors, default 1,2");

  auto* rates = app.add_subcommand("rates", "Adaptive-sampling rate series");
  rates->add_option("--config", config, "Scenario file")->required();
  rates->add_option("--window", window_ms, "Averaging window in ms")->capture_default_str();

  // Global flags may also follow the subcommand.
  for (auto* sub : {analyze, simulate, validate, rates}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(g, config, out_path);
    if (*simulate) return cmd_simulate(g, config, duration, warmup, trace_path);
    if (*validate) return cmd_validate(g, config, sweep, nack);
    if (*rates) return cmd_rates(g, config, window_ms);
  } catch (const ParseError& e) {
    std::cerr << "error: " << config << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
