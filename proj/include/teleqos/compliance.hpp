#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teleqos/analytic.hpp"

namespace teleqos {

enum class Verdict { Pass, Fail, Warn, NotEvaluated };

const char* verdict_name(Verdict v);

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::NotEvaluated;
  double value = 0.0;  // measured or predicted quantity
  double limit = 0.0;  // threshold it was compared against
  bool hard = true;    // warnings never fail the report
  std::string detail;
};

/// Per-condition verdicts plus the model validity flags and an echo of the
/// inputs. Loss conditions are filled in only when simulated data exists.
struct ComplianceReport {
  NetworkParams net;
  HapticFlowSpec haptic;
  QosSpec qos;
  AvMuxSpec mux;
  int n_ack = 1;
  ValidityFlags validity;
  std::vector<ConditionResult> conditions;

  bool overall_pass() const;
  const ConditionResult* find(const std::string& name) const;
};

/// Analytic QoS check in the order: stability, haptic delay, haptic jitter,
/// packet-size warning, audio delay, video delay.
ComplianceReport qos_check(const NetworkParams& net, const HapticFlowSpec& h, const QosSpec& qos,
                           const AvMuxSpec& mux, int n_ack);

/// Appends per-media loss verdicts from measured loss fractions.
void add_loss_verdicts(ComplianceReport& report, std::optional<double> haptic_loss,
                       std::optional<double> audio_loss, std::optional<double> video_loss);

}  // namespace teleqos
