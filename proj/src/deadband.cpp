#include "teleqos/deadband.hpp"

#include <cmath>

#include "teleqos/error.hpp"

namespace teleqos {

double norm(const ForceVector& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

DeadbandState::DeadbandState(double k) : k_(k) {
  if (!(k > 0.0 && k < 1.0)) throw InvalidParams("deadband parameter k must be in (0, 1)");
}

bool DeadbandState::offer(const ForceVector& x) {
  bool significant = false;
  if (!ref_) {
    significant = true;
  } else {
    const double ref_norm = norm(*ref_);
    if (ref_norm <= kDeadbandZeroEpsilon) {
      significant = norm(x) > kDeadbandZeroEpsilon;
    } else {
      const ForceVector d{x[0] - (*ref_)[0], x[1] - (*ref_)[1], x[2] - (*ref_)[2]};
      significant = norm(d) >= k_ * ref_norm;
    }
  }
  if (significant) ref_ = x;
  return significant;
}

std::vector<bool> deadband_filter(std::span<const HapticSample> samples, double k) {
  DeadbandState state(k);
  std::vector<bool> flags;
  flags.reserve(samples.size());
  for (const auto& s : samples) flags.push_back(state.offer(s.value));
  return flags;
}

}  // namespace teleqos
