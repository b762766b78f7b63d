#include "teleqos/haptic_trace.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "teleqos/error.hpp"

namespace teleqos {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Separate streams so span layout does not depend on how many noise draws
// a span consumed.
constexpr std::uint64_t kNoiseStream = 0x9e3779b97f4a7c15ULL;

std::int64_t sample_count(double duration) {
  if (!(duration >= 0.0)) throw InvalidParams("duration must be >= 0");
  return static_cast<std::int64_t>(std::ceil(duration / kHapticTick - 1e-9));
}

ForceVector resting_direction() {
  const double c = 1.0 / std::sqrt(3.0);
  return {c, c, c};
}

}  // namespace

const char* signal_kind_name(SignalKind k) {
  switch (k) {
    case SignalKind::SumOfSinusoids: return "sum-of-sinusoids";
    case SignalKind::FilteredNoise: return "filtered-noise";
    case SignalKind::ContactBurst: return "contact-burst";
  }
  return "?";
}

SignalKind parse_signal_kind(std::string_view name) {
  if (name == "sum-of-sinusoids") return SignalKind::SumOfSinusoids;
  if (name == "filtered-noise") return SignalKind::FilteredNoise;
  if (name == "contact-burst") return SignalKind::ContactBurst;
  throw InvalidParams("unknown signal kind '" + std::string(name) + "'");
}

void SignalSpec::validate() const {
  auto bad = [](const char* what) { throw InvalidParams(what); };
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) bad("signal amplitude must be >= 0");
  if (!(offset >= 0.0) || !std::isfinite(offset)) bad("signal offset must be >= 0");
  if (!(frequency > 0.0)) bad("signal frequency must be > 0");
  if (!(contact_frequency > 0.0)) bad("contact frequency must be > 0");
  if (kind == SignalKind::ContactBurst) {
    if (!(quiet_span_min > 0.0 && quiet_span_max >= quiet_span_min)) bad("invalid quiet span range");
    if (!(contact_span_min > 0.0 && contact_span_max >= contact_span_min)) {
      bad("invalid contact span range");
    }
  }
}

std::vector<SignalSpan> contact_spans(const SignalSpec& spec, double duration) {
  spec.validate();
  std::vector<SignalSpan> spans;
  if (spec.kind != SignalKind::ContactBurst) {
    spans.push_back({0.0, duration, false});
    return spans;
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> quiet(spec.quiet_span_min, spec.quiet_span_max);
  std::uniform_real_distribution<double> contact(spec.contact_span_min, spec.contact_span_max);
  double t = 0.0;
  bool in_contact = false;
  while (t < duration) {
    // Quantize to the sample grid so span membership is exact per sample.
    const double len = std::round((in_contact ? contact(rng) : quiet(rng)) / kHapticTick) * kHapticTick;
    const double end = std::min(duration, t + std::max(len, kHapticTick));
    spans.push_back({t, end, in_contact});
    t = end;
    in_contact = !in_contact;
  }
  return spans;
}

std::vector<HapticSample> synth_haptic_trace(const SignalSpec& spec, double duration) {
  spec.validate();
  const std::int64_t n = sample_count(duration);
  std::vector<HapticSample> out;
  out.reserve(static_cast<std::size_t>(n));

  std::mt19937_64 rng(spec.seed ^ kNoiseStream);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ForceVector phi{}, psi{};
  for (int c = 0; c < 3; ++c) {
    phi[c] = phase(rng);
    psi[c] = phase(rng);
  }
  const ForceVector rest = resting_direction();

  switch (spec.kind) {
    case SignalKind::SumOfSinusoids:
      for (std::int64_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * kHapticTick;
        HapticSample s{t, {}};
        for (int c = 0; c < 3; ++c) {
          s.value[c] = spec.offset * rest[c] +
                       spec.amplitude * (0.6 * std::sin(kTwoPi * spec.frequency * t + phi[c]) +
                                         0.4 * std::sin(kTwoPi * 2.3 * spec.frequency * t + psi[c]));
        }
        out.push_back(s);
      }
      break;

    case SignalKind::FilteredNoise: {
      // One-pole low-pass at `frequency`; the gain keeps the output std near amplitude.
      const double a = 1.0 - std::exp(-kTwoPi * spec.frequency * kHapticTick);
      const double gain = std::sqrt((2.0 - a) / a);
      ForceVector state{};
      for (std::int64_t i = 0; i < n; ++i) {
        HapticSample s{static_cast<double>(i) * kHapticTick, {}};
        for (int c = 0; c < 3; ++c) {
          state[c] += a * (gauss(rng) * gain - state[c]);
          s.value[c] = spec.offset * rest[c] + spec.amplitude * state[c];
        }
        out.push_back(s);
      }
      break;
    }

    case SignalKind::ContactBurst: {
      const auto spans = contact_spans(spec, duration);
      std::size_t span = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * kHapticTick;
        while (span + 1 < spans.size() && t >= spans[span].end - 1e-12) ++span;
        const bool contact = !spans.empty() && spans[span].contact;
        HapticSample s{t, {}};
        // Slow drift stays well inside a 10% deadband.
        const double drift = 1.0 + 0.03 * std::sin(kTwoPi * spec.frequency * t);
        for (int c = 0; c < 3; ++c) {
          double v = spec.offset * rest[c] * drift + 0.001 * spec.offset * gauss(rng);
          if (contact) {
            v += spec.amplitude * (std::sin(kTwoPi * spec.contact_frequency * t + phi[c]) +
                                   0.5 * std::sin(kTwoPi * 1.7 * spec.contact_frequency * t + psi[c]));
          }
          s.value[c] = v;
        }
        out.push_back(s);
      }
      break;
    }
  }
  return out;
}

void write_haptic_csv(std::ostream& out, std::span<const HapticSample> samples) {
  out << "time_ms,fx,fy,fz\n";
  out << std::setprecision(17);
  for (const auto& s : samples) {
    out << s.time * 1e3 << ',' << s.value[0] << ',' << s.value[1] << ',' << s.value[2] << '\n';
  }
}

std::vector<HapticSample> read_haptic_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, 0, "empty haptic trace");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time_ms,fx,fy,fz") throw ParseError(1, 1, "expected header time_ms,fx,fy,fz");

  std::vector<HapticSample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double values[4];
    for (int f = 0; f < 4; ++f) {
      if (!std::getline(row, field, ',')) throw ParseError(lineno, 0, "expected 4 columns");
      try {
        std::size_t used = 0;
        values[f] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError(lineno, f + 1, "bad number '" + field + "'");
      }
    }
    if (std::getline(row, field, ',')) throw ParseError(lineno, 5, "too many columns");
    out.push_back({values[0] * 1e-3, {values[1], values[2], values[3]}});
  }
  return out;
}

}  // namespace teleqos
