#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace teleqos {

using ForceVector = std::array<double, 3>;

/// One haptic sample on the 1 kHz grid.
struct HapticSample {
  double time = 0.0;  // s
  ForceVector value{};

  bool operator==(const HapticSample&) const = default;
};

inline constexpr double kHapticTick = 1e-3;

enum class SignalKind { SumOfSinusoids, FilteredNoise, ContactBurst };

const char* signal_kind_name(SignalKind k);
SignalKind parse_signal_kind(const std::string_view name);

/// Synthetic stand-in for recorded force traces.
///
/// ContactBurst alternates quiescent spans, where the force drifts slowly
/// around `offset`, with contact spans where an oscillation of
/// `contact_frequency` and magnitude comparable to `amplitude` rides on it.
/// Span lengths are drawn uniformly from the given ranges.
struct SignalSpec {
  SignalKind kind = SignalKind::ContactBurst;
  double amplitude = 1.0;       // device units
  double offset = 1.0;          // resting force magnitude, device units
  double frequency = 0.5;       // Hz, slow drift / base sinusoid
  double contact_frequency = 12.0;  // Hz
  double quiet_span_min = 2.0;  // s
  double quiet_span_max = 5.0;
  double contact_span_min = 1.5;
  double contact_span_max = 4.0;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const SignalSpec&) const = default;
};

/// Deterministic per seed. Samples at t = 0, 1 ms, ... < duration.
std::vector<HapticSample> synth_haptic_trace(const SignalSpec& spec, double duration);

/// Spans of a contact-burst trace as [start, end) times with a contact flag,
/// reproduced from the same seed as synth_haptic_trace.
struct SignalSpan {
  double start = 0.0;
  double end = 0.0;
  bool contact = false;
};
std::vector<SignalSpan> contact_spans(const SignalSpec& spec, double duration);

/// CSV with header time_ms,fx,fy,fz.
void write_haptic_csv(std::ostream& out, std::span<const HapticSample> samples);
std::vector<HapticSample> read_haptic_csv(std::istream& in);

}  // namespace teleqos
