#pragma once

#include <string>
#include <string_view>

namespace teleqos {

// All internal quantities are SI-ish reals: bytes, seconds, bytes/second.
// 1 kB = 1000 B and 1 Mbps = 1e6 bit/s.

enum class Dimension { Rate, Time, Size, Frequency, Fraction };

struct Quantity {
  double value;  // in the internal base unit of its dimension
  Dimension dimension;
};

/// Parses "6 Mbps", "8ms", "14 kB", "25 Hz", "10 %" into base units.
/// Throws std::invalid_argument when the suffix is missing or unknown.
Quantity parse_quantity(std::string_view text);

/// Like parse_quantity but also checks the dimension.
double parse_quantity_as(std::string_view text, Dimension expected);

/// Renders a base-unit value with a suffix that parses back to the same double.
std::string render_quantity(double value, Dimension dimension);

const char* dimension_name(Dimension d);

constexpr double mbps(double v) { return v * 1e6 / 8.0; }
constexpr double kbps(double v) { return v * 1e3 / 8.0; }
constexpr double ms(double v) { return v * 1e-3; }
constexpr double kB(double v) { return v * 1e3; }

constexpr double to_ms(double seconds) { return seconds * 1e3; }
constexpr double to_mbps(double bytes_per_s) { return bytes_per_s * 8.0 / 1e6; }

}  // namespace teleqos
