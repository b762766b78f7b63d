#pragma once

#include <optional>
#include <span>
#include <vector>

#include "teleqos/haptic_trace.hpp"

namespace teleqos {

/// Magnitudes below this count as a zero reference force.
inline constexpr double kDeadbandZeroEpsilon = 1e-6;

/// Relative (Weber) deadband on the force vector.
///
/// A sample is significant when ||x - ref|| >= k ||ref||, where ref is the
/// last significant sample. The first sample is always significant. With a
/// zero reference any sample of magnitude above kDeadbandZeroEpsilon is.
class DeadbandState {
 public:
  explicit DeadbandState(double k);

  bool offer(const ForceVector& x);
  double k() const { return k_; }
  const std::optional<ForceVector>& reference() const { return ref_; }

 private:
  double k_;
  std::optional<ForceVector> ref_;
};

std::vector<bool> deadband_filter(std::span<const HapticSample> samples, double k);

double norm(const ForceVector& v);

}  // namespace teleqos
