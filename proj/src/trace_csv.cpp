#include "teleqos/trace_csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace teleqos {

void write_trace_csv_header(std::ostream& out) {
  out << "time_ns,event,flow,seq,size_bytes,queue_bytes,cwnd_pkts\n";
}

void write_trace_csv_row(std::ostream& out, const TraceRecord& r) {
  out << r.time << ',' << event_kind_name(r.kind) << ',' << r.flow << ',' << r.seq << ','
      << r.size << ',' << r.queue_bytes << ',';
  if (!std::isnan(r.cwnd)) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, r.cwnd);
    out.write(buf, res.ptr - buf);
  }
  out << '\n';
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records) {
  write_trace_csv_header(out);
  for (const auto& r : records) write_trace_csv_row(out, r);
}

}  // namespace teleqos
