#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teleqos/analytic.hpp"
#include "teleqos/haptic_trace.hpp"
#include "teleqos/units.hpp"
#include "teleqos/vh_mux.hpp"

namespace teleqos {

enum class FlowKind { Tcp, Cbr, Haptic, Adaptive };

const char* flow_kind_name(FlowKind k);

/// One traffic source. Fields not used by a kind keep their defaults.
struct FlowSpec {
  std::string name;
  FlowKind kind = FlowKind::Cbr;

  // Cbr / Haptic
  double rate = 0.0;    // bytes/s
  double packet = 0.0;  // bytes (TCP segment size for Tcp)
  double phase = 0.0;   // s, first emission time

  // Haptic: per-packet media split. Bytes not covered are header.
  double haptic_payload = 0.0;
  double audio_payload = 0.0;
  double video_payload = 0.0;

  // Tcp
  int n_ack = 1;

  // Adaptive (deadband sampling + visual-haptic multiplexing)
  double deadband_k = 0.1;
  MuxConfig mux;
  SignalSpec signal;
  std::optional<std::string> trace_file;  // CSV time_ms,fx,fy,fz replaces the generator

  double gap() const { return packet / rate; }

  bool operator==(const FlowSpec&) const = default;
};

struct RunSpec {
  double duration = 60.0;         // s
  std::optional<double> warmup;   // s; default max(10% of duration, 20 s) when that fits
  std::uint64_t seed = 1;

  double resolved_warmup() const;
  bool operator==(const RunSpec&) const = default;
};

struct ScenarioConfig {
  double mu = 0.0;   // bytes/s
  double tau = 0.0;  // s
  double buf = 0.0;  // bytes
  std::vector<FlowSpec> flows;
  RunSpec run;
  QosSpec qos;
  AvMuxSpec mux;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  const FlowSpec* tcp_flow() const;
  const FlowSpec* haptic_flow() const;  // first Haptic flow
  const FlowSpec* adaptive_flow() const;
  std::optional<std::size_t> flow_index(std::string_view name) const;

  /// Aggregate non-TCP rate seen by the TCP source. Adaptive flows count at
  /// their peak (one significant packet per tick).
  double cbr_rate_total() const;

  /// Network view for the analytic model; s_tcp and n_ack come from the TCP
  /// flow (578 B and 1 when absent).
  NetworkParams network_params() const;

  /// Haptic stream plus aggregated CBR cross-traffic. Requires a Haptic flow.
  HapticFlowSpec haptic_spec() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Sectioned key=value text: [network], [flow.NAME], [qos], [mux], [run].
/// Throws ParseError for syntax/unit problems and ConfigError for rule
/// violations such as duplicate flow ids or R >= mu with a TCP source.
ScenarioConfig parse_scenario(std::string_view text);

/// Inverse of parse_scenario: parse_scenario(render_scenario(c)) == c.
std::string render_scenario(const ScenarioConfig& config);

ScenarioConfig load_scenario_file(const std::string& path);

/// Base setting of the telehaptic experiments: 6 Mbps, 8 ms, 14 kB, a TCP
/// source with 578 B segments, a 137 B/ms telehaptic stream and 150 B
/// CBR cross-traffic topping the aggregate up to `rate_total`.
ScenarioConfig baseline_scenario(double rate_total = mbps(3.0));

}  // namespace teleqos
