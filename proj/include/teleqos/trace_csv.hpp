#pragma once

#include <iosfwd>
#include <span>

#include "teleqos/sim_types.hpp"

namespace teleqos {

/// Header: time_ns,event,flow,seq,size_bytes,queue_bytes,cwnd_pkts.
/// cwnd_pkts is empty for records without a window value.
void write_trace_csv_header(std::ostream& out);
void write_trace_csv_row(std::ostream& out, const TraceRecord& r);
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records);

}  // namespace teleqos
