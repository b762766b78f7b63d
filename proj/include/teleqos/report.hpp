#pragma once

#include <iosfwd>
#include <span>
#include <string_view>

#include "teleqos/compliance.hpp"
#include "teleqos/rate.hpp"
#include "teleqos/simulator.hpp"
#include "teleqos/validation.hpp"

namespace teleqos {

enum class ReportFormat { Csv, Text };

/// "csv" or "text"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view name);

/// Columns: control,nack,dmin_a_ms,dmin_s_ms,dmax_a_ms,dmax_s_ms,jit_a_ms,jit_s_ms,single_loss_flag
void emit_report(std::ostream& out, std::span<const ValidationRow> rows, ReportFormat format);

/// Columns: condition,verdict,value,limit,kind,detail, then an overall row.
void emit_report(std::ostream& out, const ComplianceReport& report, ReportFormat format);

/// Per-flow summary of a simulation run.
void emit_run_summary(std::ostream& out, const Simulator& sim, const RunResult& result,
                      ReportFormat format);

/// Columns: time_s,rate_kbps.
void emit_rate_series(std::ostream& out, const RateSeries& series, ReportFormat format);

}  // namespace teleqos
