#include "teleqos/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace teleqos {
namespace {

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// Left-aligned first column, right-aligned numbers.
void emit_table(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out << "  ";
      const std::string pad(width[c] - r[c].size(), ' ');
      out << (c == 0 ? r[c] + pad : pad + r[c]);
    }
    out << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
}

void emit_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << csv_field(r[c]);
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void emit(std::ostream& out, ReportFormat f, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
  if (f == ReportFormat::Csv) {
    emit_csv(out, header, rows);
  } else {
    emit_table(out, header, rows);
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (csv, text)");
}

void emit_report(std::ostream& out, std::span<const ValidationRow> rows, ReportFormat format) {
  const std::vector<std::string> header = {"control",   "nack",      "dmin_a_ms",
                                           "dmin_s_ms", "dmax_a_ms", "dmax_s_ms",
                                           "jit_a_ms",  "jit_s_ms",  "single_loss_flag"};
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    body.push_back({fixed(r.control, 3), std::to_string(r.n_ack), fixed(to_ms(r.d_min_a), 3),
                    fixed(to_ms(r.d_min_s), 3), fixed(to_ms(r.d_max_a), 3),
                    fixed(to_ms(r.d_max_s), 3), fixed(to_ms(r.jitter_a), 3),
                    fixed(to_ms(r.jitter_s), 3), r.validity.single_loss ? "1" : "0"});
  }
  emit(out, format, header, body);
}

void emit_report(std::ostream& out, const ComplianceReport& report, ReportFormat format) {
  std::vector<std::vector<std::string>> body;
  for (const auto& c : report.conditions) {
    body.push_back({c.name, verdict_name(c.verdict), fixed(c.value, 6), fixed(c.limit, 6),
                    c.hard ? "hard" : "soft", c.detail});
  }
  body.push_back({"overall", report.overall_pass() ? "PASS" : "FAIL", "", "", "", ""});
  if (format == ReportFormat::Text && report.net.mu > 0.0) {
    out << "mu " << fixed(to_mbps(report.net.mu), 3) << " Mbps, tau " << fixed(to_ms(report.net.tau), 3)
        << " ms, B " << fixed(report.net.buf, 0) << " B, S_tcp " << fixed(report.net.s_tcp, 0)
        << " B, n_ack " << report.n_ack << ", R " << fixed(to_mbps(report.haptic.rate_total()), 3)
        << " Mbps\n";
    out << "validity: stability " << (report.validity.stability ? "yes" : "no")
        << ", full utilization " << (report.validity.full_utilization ? "yes" : "no")
        << ", single loss " << (report.validity.single_loss ? "yes" : "no") << "\n\n";
  }
  emit(out, format, {"condition", "verdict", "value", "limit", "kind", "detail"}, body);
}

void emit_run_summary(std::ostream& out, const Simulator& sim, const RunResult& result,
                      ReportFormat format) {
  std::vector<std::vector<std::string>> body;
  for (const auto& info : sim.flows()) {
    const FlowMetrics& m = result.flow_metrics(info.id);
    const FlowCounters& c = result.counters[info.id];
    const bool any = m.delivered > 0;
    body.push_back({info.name, flow_kind_name(sim.scenario().flows[info.id].kind),
                    std::to_string(c.created), std::to_string(m.delivered), std::to_string(m.dropped),
                    fixed(100.0 * m.loss_fraction(), 4), any ? fixed(to_ms(m.delay_min), 3) : "",
                    any ? fixed(to_ms(m.delay_max), 3) : "", fixed(to_ms(m.max_positive_jitter), 3)});
  }
  emit(out, format,
       {"flow", "kind", "sent_total", "delivered", "dropped", "loss_pct", "dmin_ms", "dmax_ms",
        "jit_ms"},
       body);
}

void emit_rate_series(std::ostream& out, const RateSeries& series, ReportFormat format) {
  if (format == ReportFormat::Text) {
    out << "window " << fixed(to_ms(series.window), 1) << " ms, mean "
        << fixed(to_mbps(series.mean) * 1e3, 3) << " kbps, peak "
        << fixed(to_mbps(series.peak) * 1e3, 3) << " kbps\n";
    return;
  }
  out << "time_s,rate_kbps\n";
  for (std::size_t i = 0; i < series.time.size(); ++i) {
    out << fixed(series.time[i], 3) << ',' << fixed(to_mbps(series.rate[i]) * 1e3, 3) << '\n';
  }
}

}  // namespace teleqos
