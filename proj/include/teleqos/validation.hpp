#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "teleqos/analytic.hpp"
#include "teleqos/scenario.hpp"

namespace teleqos {

/// Quantity varied across a validation sweep. Grid values are given in the
/// display unit: Mbps for rates, kB for the buffer, ms for tau.
enum class SweepVar { RateTotal, Mu, Buffer, Tau };

const char* sweep_var_name(SweepVar v);
/// Accepts R, mu, B/buffer, tau. Throws std::invalid_argument otherwise.
SweepVar parse_sweep_var(std::string_view name);

struct Sweep {
  SweepVar var = SweepVar::RateTotal;
  std::vector<double> grid;
};

/// Parses "VAR=a,b,c".
Sweep parse_sweep(std::string_view text);

struct ValidationRow {
  SweepVar var = SweepVar::RateTotal;
  double control = 0.0;  // display unit of var
  int n_ack = 1;
  // Analytic, seconds
  double d_min_a = 0.0;
  double d_max_a = 0.0;
  double jitter_a = 0.0;
  // Simulated, seconds
  double d_min_s = 0.0;
  double d_max_s = 0.0;
  double jitter_s = 0.0;
  // |A - S| / A, NaN where A == 0
  double err_d_min = 0.0;
  double err_d_max = 0.0;
  double err_jitter = 0.0;
  ValidityFlags validity;
  std::uint64_t haptic_delivered = 0;
  std::uint64_t haptic_dropped = 0;
};

double relative_error(double analytic, double simulated);

/// The scenario with one sweep variable set to `value` (display unit).
/// A rate sweep rescales the first CBR cross flow so the non-TCP total
/// equals `value`, adding a 150 B cross flow when none exists.
ScenarioConfig apply_sweep_point(const ScenarioConfig& base, SweepVar var, double value);

/// Analytic row for `base` at one grid point; the simulated columns stay zero.
ValidationRow analytic_row(const ScenarioConfig& config, SweepVar var, double control, int n_ack);

/// One independent job per (grid point, n_ack), run in parallel. Rows are
/// ordered by control value, then n_ack. Requires a Haptic or Cbr flow to
/// observe and R < mu at every grid point.
std::vector<ValidationRow> run_validation(const ScenarioConfig& config, const Sweep& sweep,
                                          const std::vector<int>& nack_grid = {1, 2});

}  // namespace teleqos
