#include "teleqos/compliance.hpp"

#include <algorithm>

#include "teleqos/error.hpp"

namespace teleqos {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Warn: return "WARN";
    case Verdict::NotEvaluated: return "N/A";
  }
  return "?";
}

bool ComplianceReport::overall_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) {
    return !c.hard || c.verdict == Verdict::Pass;
  });
}

const ConditionResult* ComplianceReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ComplianceReport qos_check(const NetworkParams& net, const HapticFlowSpec& h, const QosSpec& qos,
                           const AvMuxSpec& mux, int n_ack) {
  net.validate();
  h.validate();
  if (n_ack < 1) throw InvalidParams("cumulative-ACK factor must be >= 1");

  ComplianceReport r;
  r.net = net;
  r.haptic = h;
  r.qos = qos;
  r.mux = mux;
  r.n_ack = n_ack;
  const double rate = h.rate_total();
  r.validity = validity_check(net, rate);

  auto verdict = [](bool ok) { return ok ? Verdict::Pass : Verdict::Fail; };

  r.conditions.push_back({"stability", verdict(rate < net.mu), rate, net.mu, true,
                          "aggregate CBR rate vs link capacity (bytes/s)"});

  const double d_max = net.tau + net.buf / net.mu;
  const bool delay_ok = d_max < qos.haptic.delay;
  r.conditions.push_back({"haptic_delay", verdict(delay_ok), d_max, qos.haptic.delay, true,
                          "tau + B/mu (s)"});

  if (rate < net.mu) {
    const double jitter = haptic_jitter_max(net, h, n_ack);
    r.conditions.push_back({"haptic_jitter", verdict(jitter < qos.haptic.jitter), jitter,
                            qos.haptic.jitter, true, "maximum positive haptic jitter (s)"});
  } else {
    r.conditions.push_back({"haptic_jitter", Verdict::NotEvaluated, 0.0, qos.haptic.jitter, true,
                            "undefined without a stable queue"});
  }

  r.conditions.push_back({"packet_size", h.pkt_h < net.s_tcp ? Verdict::Pass : Verdict::Warn,
                          h.pkt_h, net.s_tcp, false,
                          "haptic packets comparable to TCP segments are exposed to loss"});

  // A missed haptic deadline shifts the audio/video bound by the real worst case.
  const double deadline = delay_ok ? qos.haptic.delay : d_max;
  const AvDelayBounds av = av_delay_bounds(mux, h.gap_h, deadline);
  r.conditions.push_back({"audio_delay", verdict(av.d_aud < qos.audio.delay), av.d_aud,
                          qos.audio.delay, true, "haptic deadline + (s_a/s_m) T_h (s)"});
  r.conditions.push_back({"video_delay", verdict(av.d_vid < qos.video.delay), av.d_vid,
                          qos.video.delay, true, "haptic deadline + 1/f_v (s)"});
  return r;
}

void add_loss_verdicts(ComplianceReport& report, std::optional<double> haptic_loss,
                       std::optional<double> audio_loss, std::optional<double> video_loss) {
  auto add = [&](const char* name, std::optional<double> loss, double limit) {
    if (!loss) return;
    report.conditions.push_back({name, *loss <= limit ? Verdict::Pass : Verdict::Fail, *loss,
                                 limit, true, "simulated loss fraction"});
  };
  add("haptic_loss", haptic_loss, report.qos.haptic.loss);
  add("audio_loss", audio_loss, report.qos.audio.loss);
  add("video_loss", video_loss, report.qos.video.loss);
}

}  // namespace teleqos
