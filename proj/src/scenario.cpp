#include "teleqos/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "teleqos/error.hpp"

namespace teleqos {
namespace {

constexpr double kDefaultTcpSegment = 578.0;

// Plain reals and integers carry no unit.
double parse_real(std::string_view v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view v) {
  Int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::string render_real(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

FlowKind parse_flow_kind(std::string_view v) {
  if (v == "tcp") return FlowKind::Tcp;
  if (v == "cbr") return FlowKind::Cbr;
  if (v == "haptic") return FlowKind::Haptic;
  if (v == "adaptive") return FlowKind::Adaptive;
  throw std::invalid_argument("unknown flow kind '" + std::string(v) + "'");
}

// A key bound to a field: how to read it from text and how to write it back.
template <typename T>
struct Key {
  const char* name;
  std::function<void(T&, std::string_view)> set;
  std::function<std::string(const T&)> get;
};

template <typename T>
Key<T> quantity(const char* name, double T::*field, Dimension d) {
  return {name, [=](T& t, std::string_view v) { t.*field = parse_quantity_as(v, d); },
          [=](const T& t) { return render_quantity(t.*field, d); }};
}

template <typename T>
Key<T> real(const char* name, double T::*field) {
  return {name, [=](T& t, std::string_view v) { t.*field = parse_real(v); },
          [=](const T& t) { return render_real(t.*field); }};
}

const std::vector<Key<FlowSpec>>& flow_keys() {
  static const std::vector<Key<FlowSpec>> keys = {
      {"kind", [](FlowSpec& f, std::string_view v) { f.kind = parse_flow_kind(v); },
       [](const FlowSpec& f) { return std::string(flow_kind_name(f.kind)); }},
      quantity("rate", &FlowSpec::rate, Dimension::Rate),
      quantity("packet", &FlowSpec::packet, Dimension::Size),
      quantity("phase", &FlowSpec::phase, Dimension::Time),
      quantity("haptic_payload", &FlowSpec::haptic_payload, Dimension::Size),
      quantity("audio_payload", &FlowSpec::audio_payload, Dimension::Size),
      quantity("video_payload", &FlowSpec::video_payload, Dimension::Size),
      {"nack", [](FlowSpec& f, std::string_view v) { f.n_ack = parse_int<int>(v); },
       [](const FlowSpec& f) { return std::to_string(f.n_ack); }},
      real("k", &FlowSpec::deadband_k),
      {"video_rate",
       [](FlowSpec& f, std::string_view v) { f.mux.video_rate = parse_quantity_as(v, Dimension::Rate); },
       [](const FlowSpec& f) { return render_quantity(f.mux.video_rate, Dimension::Rate); }},
      {"mux_header",
       [](FlowSpec& f, std::string_view v) { f.mux.header = parse_quantity_as(v, Dimension::Size); },
       [](const FlowSpec& f) { return render_quantity(f.mux.header, Dimension::Size); }},
      {"mux_haptic_payload",
       [](FlowSpec& f, std::string_view v) {
         f.mux.haptic_payload = parse_quantity_as(v, Dimension::Size);
       },
       [](const FlowSpec& f) { return render_quantity(f.mux.haptic_payload, Dimension::Size); }},
      {"chunk_ticks", [](FlowSpec& f, std::string_view v) { f.mux.chunk_ticks = parse_int<int>(v); },
       [](const FlowSpec& f) { return std::to_string(f.mux.chunk_ticks); }},
      {"signal", [](FlowSpec& f, std::string_view v) { f.signal.kind = parse_signal_kind(v); },
       [](const FlowSpec& f) { return std::string(signal_kind_name(f.signal.kind)); }},
      {"signal_seed",
       [](FlowSpec& f, std::string_view v) { f.signal.seed = parse_int<std::uint64_t>(v); },
       [](const FlowSpec& f) { return std::to_string(f.signal.seed); }},
      {"amplitude", [](FlowSpec& f, std::string_view v) { f.signal.amplitude = parse_real(v); },
       [](const FlowSpec& f) { return render_real(f.signal.amplitude); }},
      {"offset", [](FlowSpec& f, std::string_view v) { f.signal.offset = parse_real(v); },
       [](const FlowSpec& f) { return render_real(f.signal.offset); }},
      {"frequency",
       [](FlowSpec& f, std::string_view v) {
         f.signal.frequency = parse_quantity_as(v, Dimension::Frequency);
       },
       [](const FlowSpec& f) { return render_quantity(f.signal.frequency, Dimension::Frequency); }},
      {"contact_frequency",
       [](FlowSpec& f, std::string_view v) {
         f.signal.contact_frequency = parse_quantity_as(v, Dimension::Frequency);
       },
       [](const FlowSpec& f) {
         return render_quantity(f.signal.contact_frequency, Dimension::Frequency);
       }},
      {"quiet_span_min",
       [](FlowSpec& f, std::string_view v) { f.signal.quiet_span_min = parse_quantity_as(v, Dimension::Time); },
       [](const FlowSpec& f) { return render_quantity(f.signal.quiet_span_min, Dimension::Time); }},
      {"quiet_span_max",
       [](FlowSpec& f, std::string_view v) { f.signal.quiet_span_max = parse_quantity_as(v, Dimension::Time); },
       [](const FlowSpec& f) { return render_quantity(f.signal.quiet_span_max, Dimension::Time); }},
      {"contact_span_min",
       [](FlowSpec& f, std::string_view v) { f.signal.contact_span_min = parse_quantity_as(v, Dimension::Time); },
       [](const FlowSpec& f) { return render_quantity(f.signal.contact_span_min, Dimension::Time); }},
      {"contact_span_max",
       [](FlowSpec& f, std::string_view v) { f.signal.contact_span_max = parse_quantity_as(v, Dimension::Time); },
       [](const FlowSpec& f) { return render_quantity(f.signal.contact_span_max, Dimension::Time); }},
      {"trace_file", [](FlowSpec& f, std::string_view v) { f.trace_file = std::string(v); },
       [](const FlowSpec& f) { return f.trace_file.value_or(""); }},
  };
  return keys;
}


const std::vector<Key<ScenarioConfig>>& network_keys() {
  static const std::vector<Key<ScenarioConfig>> keys = {
      quantity("mu", &ScenarioConfig::mu, Dimension::Rate),
      quantity("tau", &ScenarioConfig::tau, Dimension::Time),
      quantity("buffer", &ScenarioConfig::buf, Dimension::Size),
  };
  return keys;
}

const std::vector<Key<QosSpec>>& qos_keys() {
  static const std::vector<Key<QosSpec>> keys = [] {
    std::vector<Key<QosSpec>> k;
    const std::pair<const char*, MediaQos QosSpec::*> media[] = {
        {"haptic", &QosSpec::haptic}, {"audio", &QosSpec::audio}, {"video", &QosSpec::video}};
    const std::tuple<const char*, double MediaQos::*, Dimension> fields[] = {
        {"_delay", &MediaQos::delay, Dimension::Time},
        {"_jitter", &MediaQos::jitter, Dimension::Time},
        {"_loss", &MediaQos::loss, Dimension::Fraction}};
    static std::vector<std::string> names;  // keeps the key strings alive
    names.reserve(9);
    for (const auto& [mname, m] : media) {
      for (const auto& [suffix, f, d] : fields) {
        names.push_back(std::string(mname) + suffix);
        k.push_back({names.back().c_str(),
                     [m, f, d](QosSpec& q, std::string_view v) { (q.*m).*f = parse_quantity_as(v, d); },
                     [m, f, d](const QosSpec& q) { return render_quantity((q.*m).*f, d); }});
      }
    }
    return k;
  }();
  return keys;
}

const std::vector<Key<AvMuxSpec>>& mux_keys() {
  static const std::vector<Key<AvMuxSpec>> keys = {
      quantity("audio_frame", &AvMuxSpec::s_a, Dimension::Size),
      quantity("fragment", &AvMuxSpec::s_m, Dimension::Size),
      quantity("video_fps", &AvMuxSpec::f_v, Dimension::Frequency),
  };
  return keys;
}

const std::vector<Key<RunSpec>>& run_keys() {
  static const std::vector<Key<RunSpec>> keys = {
      quantity("duration", &RunSpec::duration, Dimension::Time),
      {"warmup", [](RunSpec& r, std::string_view v) { r.warmup = parse_quantity_as(v, Dimension::Time); },
       [](const RunSpec& r) { return r.warmup ? render_quantity(*r.warmup, Dimension::Time) : ""; }},
      {"seed", [](RunSpec& r, std::string_view v) { r.seed = parse_int<std::uint64_t>(v); },
       [](const RunSpec& r) { return std::to_string(r.seed); }},
  };
  return keys;
}

template <typename T>
void apply(const std::vector<Key<T>>& keys, T& target, std::string_view key, std::string_view value,
           int line, int key_col, int value_col) {
  for (const auto& k : keys) {
    if (key == k.name) {
      try {
        k.set(target, value);
      } catch (const std::exception& e) {
        throw ParseError(line, value_col, std::string(key) + ": " + e.what());
      }
      return;
    }
  }
  throw ParseError(line, key_col, "unknown key '" + std::string(key) + "'");
}

// Writes keys whose value differs from a default-constructed object.
template <typename T>
void render_section(std::ostream& out, const std::vector<Key<T>>& keys, const T& value,
                    bool all = false) {
  const T fresh{};
  for (const auto& k : keys) {
    const std::string v = k.get(value);
    if (!all && v == k.get(fresh)) continue;
    out << k.name << " = " << v << '\n';
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_flow_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

const char* flow_kind_name(FlowKind k) {
  switch (k) {
    case FlowKind::Tcp: return "tcp";
    case FlowKind::Cbr: return "cbr";
    case FlowKind::Haptic: return "haptic";
    case FlowKind::Adaptive: return "adaptive";
  }
  return "?";
}

double RunSpec::resolved_warmup() const {
  if (warmup) return *warmup;
  const double w = std::max(0.1 * duration, 20.0);
  return w < duration ? w : 0.1 * duration;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& what) { throw ConfigError(field, what); };
  if (!(mu > 0.0) || !std::isfinite(mu)) fail("network.mu", "must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) fail("network.tau", "must be > 0");
  if (!(buf > 0.0) || !std::isfinite(buf)) fail("network.buffer", "must be > 0");
  if (flows.empty()) fail("flow", "at least one flow is required");

  std::set<std::string> names;
  int tcp = 0;
  for (const auto& f : flows) {
    const std::string base = "flow." + f.name;
    if (!valid_flow_name(f.name)) fail(base, "invalid flow id");
    if (!names.insert(f.name).second) fail(base, "duplicate flow id");
    if (!(f.phase >= 0.0)) fail(base + ".phase", "must be >= 0");
    switch (f.kind) {
      case FlowKind::Tcp:
        ++tcp;
        if (!(f.packet > 0.0) || f.packet > buf) fail(base + ".packet", "must be in (0, buffer]");
        if (f.n_ack < 1) fail(base + ".nack", "must be >= 1");
        break;
      case FlowKind::Cbr:
      case FlowKind::Haptic:
        if (!(f.rate > 0.0)) fail(base + ".rate", "must be > 0");
        if (!(f.packet > 0.0) || f.packet > buf) fail(base + ".packet", "must be in (0, buffer]");
        if (f.haptic_payload < 0.0 || f.audio_payload < 0.0 || f.video_payload < 0.0 ||
            f.haptic_payload + f.audio_payload + f.video_payload > f.packet) {
          fail(base + ".packet", "media payloads exceed the packet size");
        }
        break;
      case FlowKind::Adaptive:
        if (!(f.deadband_k > 0.0 && f.deadband_k < 1.0)) fail(base + ".k", "must be in (0, 1)");
        if (!(f.mux.video_rate > 0.0)) fail(base + ".video_rate", "must be > 0");
        if (!(f.mux.header >= 0.0)) fail(base + ".mux_header", "must be >= 0");
        if (!(f.mux.haptic_payload > 0.0)) fail(base + ".mux_haptic_payload", "must be > 0");
        if (f.mux.chunk_ticks < 1) fail(base + ".chunk_ticks", "must be >= 1");
        try {
          f.signal.validate();
        } catch (const InvalidParams& e) {
          fail(base + ".signal", e.what());
        }
        if (f.trace_file && f.trace_file->empty()) fail(base + ".trace_file", "empty path");
        break;
    }
  }
  if (tcp > 1) fail("flow", "at most one tcp flow is supported");
  if (tcp == 1 && !(cbr_rate_total() < mu)) {
    fail("flow", "aggregate non-TCP rate must be below mu when a TCP flow is present");
  }
  if (!(run.duration > 0.0)) fail("run.duration", "must be > 0");
  if (run.warmup && !(*run.warmup >= 0.0 && *run.warmup < run.duration)) {
    fail("run.warmup", "must be in [0, duration)");
  }
  if (!(qos.haptic.delay > 0.0 && qos.audio.delay > 0.0 && qos.video.delay > 0.0)) {
    fail("qos", "delay limits must be > 0");
  }
  if (!(mux.s_a > 0.0 && mux.s_m > 0.0 && mux.f_v > 0.0)) fail("mux", "values must be > 0");
}

const FlowSpec* ScenarioConfig::tcp_flow() const {
  for (const auto& f : flows) if (f.kind == FlowKind::Tcp) return &f;
  return nullptr;
}

const FlowSpec* ScenarioConfig::haptic_flow() const {
  for (const auto& f : flows) if (f.kind == FlowKind::Haptic) return &f;
  return nullptr;
}

const FlowSpec* ScenarioConfig::adaptive_flow() const {
  for (const auto& f : flows) if (f.kind == FlowKind::Adaptive) return &f;
  return nullptr;
}

std::optional<std::size_t> ScenarioConfig::flow_index(std::string_view name) const {
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (flows[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {
double peak_rate(const FlowSpec& f) {
  switch (f.kind) {
    case FlowKind::Tcp: return 0.0;
    case FlowKind::Cbr:
    case FlowKind::Haptic: return f.rate;
    case FlowKind::Adaptive:
      return (f.mux.header + f.mux.haptic_payload) / kHapticTick + f.mux.video_rate;
  }
  return 0.0;
}
}  // namespace

double ScenarioConfig::cbr_rate_total() const {
  double r = 0.0;
  for (const auto& f : flows) r += peak_rate(f);
  return r;
}

NetworkParams ScenarioConfig::network_params() const {
  NetworkParams net{mu, tau, buf, kDefaultTcpSegment, 1};
  if (const FlowSpec* t = tcp_flow()) {
    net.s_tcp = t->packet;
    net.n_ack = t->n_ack;
  }
  return net;
}

HapticFlowSpec ScenarioConfig::haptic_spec() const {
  const FlowSpec* h = haptic_flow();
  if (!h) throw ConfigError("flow", "no haptic flow in scenario");
  double cross = 0.0;
  double cross_pkt = 0.0;
  for (const auto& f : flows) {
    if (&f == h) continue;
    cross += peak_rate(f);
    if (f.kind == FlowKind::Cbr || f.kind == FlowKind::Haptic) cross_pkt = std::max(cross_pkt, f.packet);
    if (f.kind == FlowKind::Adaptive) {
      cross_pkt = std::max(cross_pkt, f.mux.header + f.mux.haptic_payload + f.mux.video_rate * kHapticTick);
    }
  }
  if (cross_pkt == 0.0) cross_pkt = h->packet;
  return HapticFlowSpec::from_rate(h->rate, h->packet, cross, cross_pkt);
}

ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig cfg;
  enum class Section { None, Network, Flow, Qos, Mux, Run } section = Section::None;
  FlowSpec* flow = nullptr;
  std::set<std::string> seen_flows;
  std::set<std::string> seen_keys;  // within the current section
  bool network_seen = false;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, indent, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      seen_keys.clear();
      flow = nullptr;
      if (name == "network") {
        if (network_seen) throw ParseError(lineno, indent, "duplicate [network] section");
        network_seen = true;
        section = Section::Network;
      } else if (name == "qos") {
        section = Section::Qos;
      } else if (name == "mux") {
        section = Section::Mux;
      } else if (name == "run") {
        section = Section::Run;
      } else if (name.starts_with("flow.")) {
        const std::string id(name.substr(5));
        if (!valid_flow_name(id)) throw ParseError(lineno, indent + 6, "invalid flow id '" + id + "'");
        if (!seen_flows.insert(id).second) throw ConfigError("flow." + id, "duplicate flow id");
        section = Section::Flow;
        cfg.flows.push_back(FlowSpec{});
        cfg.flows.back().name = id;
        flow = &cfg.flows.back();
      } else {
        throw ParseError(lineno, indent, "unknown section '" + std::string(name) + "'");
      }
      if (eol == text.size()) break;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, indent, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const int value_col = static_cast<int>(value.data() - raw.data()) + 1;
    if (key.empty()) throw ParseError(lineno, indent, "missing key");
    if (value.empty()) throw ParseError(lineno, value_col, "missing value for '" + std::string(key) + "'");
    if (!seen_keys.insert(std::string(key)).second) {
      throw ParseError(lineno, indent, "duplicate key '" + std::string(key) + "'");
    }

    switch (section) {
      case Section::None: throw ParseError(lineno, indent, "key outside of a section");
      case Section::Network: apply(network_keys(), cfg, key, value, lineno, indent, value_col); break;
      case Section::Flow: apply(flow_keys(), *flow, key, value, lineno, indent, value_col); break;
      case Section::Qos: apply(qos_keys(), cfg.qos, key, value, lineno, indent, value_col); break;
      case Section::Mux: apply(mux_keys(), cfg.mux, key, value, lineno, indent, value_col); break;
      case Section::Run: apply(run_keys(), cfg.run, key, value, lineno, indent, value_col); break;
    }
    if (eol == text.size()) break;
  }
  cfg.validate();
  return cfg;
}

std::string render_scenario(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "[network]\n";
  render_section(out, network_keys(), config, true);
  for (const auto& f : config.flows) {
    out << "\n[flow." << f.name << "]\n";
    out << "kind = " << flow_kind_name(f.kind) << '\n';
    FlowSpec rest = f;
    const FlowSpec fresh{};
    for (const auto& k : flow_keys()) {
      if (std::string_view(k.name) == "kind") continue;
      const std::string v = k.get(rest);
      if (v == k.get(fresh)) continue;
      out << k.name << " = " << v << '\n';
    }
  }
  std::ostringstream qos, mux;
  render_section(qos, qos_keys(), config.qos);
  render_section(mux, mux_keys(), config.mux);
  if (!qos.str().empty()) out << "\n[qos]\n" << qos.str();
  if (!mux.str().empty()) out << "\n[mux]\n" << mux.str();
  out << "\n[run]\n";
  render_section(out, run_keys(), config.run, true);
  std::string s = out.str();
  // An unset warmup renders as an empty value; drop that line.
  if (const auto p = s.find("warmup = \n"); p != std::string::npos) s.erase(p, 10);
  return s;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

ScenarioConfig baseline_scenario(double rate_total) {
  ScenarioConfig cfg;
  cfg.mu = mbps(6.0);
  cfg.tau = ms(8.0);
  cfg.buf = kB(14.0);

  FlowSpec tcp;
  tcp.name = "tcp";
  tcp.kind = FlowKind::Tcp;
  tcp.packet = kDefaultTcpSegment;
  cfg.flows.push_back(tcp);

  FlowSpec h;
  h.name = "haptic";
  h.kind = FlowKind::Haptic;
  h.packet = 137.0;
  h.rate = h.packet / kHapticTick;
  h.haptic_payload = 12.0;
  h.audio_payload = 8.0;
  h.video_payload = 50.0;
  cfg.flows.push_back(h);

  const double cross = rate_total - h.rate;
  if (cross > 0.0) {
    FlowSpec c;
    c.name = "cross";
    c.kind = FlowKind::Cbr;
    c.packet = 150.0;
    c.rate = cross;
    cfg.flows.push_back(c);
  }
  cfg.validate();
  return cfg;
}

}  // namespace teleqos
