#include "teleqos/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace teleqos {
namespace {

struct UnitDef {
  std::string_view suffix;
  Dimension dimension;
  double scale;  // multiply parsed number by this to obtain base units
};

// Rates are stored in bytes/second, hence the /8.
constexpr std::array<UnitDef, 14> kUnits{{
    {"bps", Dimension::Rate, 1.0 / 8.0},
    {"kbps", Dimension::Rate, 1e3 / 8.0},
    {"Mbps", Dimension::Rate, 1e6 / 8.0},
    {"Gbps", Dimension::Rate, 1e9 / 8.0},
    {"ns", Dimension::Time, 1e-9},
    {"us", Dimension::Time, 1e-6},
    {"ms", Dimension::Time, 1e-3},
    {"s", Dimension::Time, 1.0},
    {"B", Dimension::Size, 1.0},
    {"kB", Dimension::Size, 1e3},
    {"MB", Dimension::Size, 1e6},
    {"Hz", Dimension::Frequency, 1.0},
    {"kHz", Dimension::Frequency, 1e3},
    {"%", Dimension::Fraction, 1e-2},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Rate: return "rate";
    case Dimension::Time: return "time";
    case Dimension::Size: return "size";
    case Dimension::Frequency: return "frequency";
    case Dimension::Fraction: return "fraction";
  }
  return "?";
}

Quantity parse_quantity(std::string_view text) {
  text = trim(text);
  double number = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), number);
  if (res.ec != std::errc{}) {
    throw std::invalid_argument("expected a number in '" + std::string(text) + "'");
  }
  std::string_view suffix = trim(std::string_view(res.ptr, text.data() + text.size() - res.ptr));
  if (suffix.empty()) {
    throw std::invalid_argument("missing unit suffix in '" + std::string(text) +
                                "' (e.g. Mbps, kbps, ms, s, B, kB)");
  }
  if (!std::isfinite(number)) {
    throw std::invalid_argument("non-finite value '" + std::string(text) + "'");
  }
  for (const auto& u : kUnits) {
    if (u.suffix == suffix) return {number * u.scale, u.dimension};
  }
  throw std::invalid_argument("unknown unit '" + std::string(suffix) + "'");
}

double parse_quantity_as(std::string_view text, Dimension expected) {
  Quantity q = parse_quantity(text);
  if (q.dimension != expected) {
    throw std::invalid_argument("expected a " + std::string(dimension_name(expected)) +
                                " but '" + std::string(trim(text)) + "' is a " +
                                dimension_name(q.dimension));
  }
  return q.value;
}

std::string render_quantity(double value, Dimension dimension) {
  switch (dimension) {
    case Dimension::Rate:
      // x8 and /8 are exact in binary floating point.
      return shortest(value * 8.0) + " bps";
    case Dimension::Time: return shortest(value) + " s";
    case Dimension::Size: return shortest(value) + " B";
    case Dimension::Frequency: return shortest(value) + " Hz";
    case Dimension::Fraction: {
      // Percent scaling is inexact; walk neighbouring doubles until one parses back.
      double pct = value * 100.0;
      double lo = pct, hi = pct;
      for (int step = 0; step < 64; ++step) {
        if (lo * 1e-2 == value) return shortest(lo) + " %";
        if (hi * 1e-2 == value) return shortest(hi) + " %";
        lo = std::nextafter(lo, -INFINITY);
        hi = std::nextafter(hi, INFINITY);
      }
      return shortest(pct) + " %";
    }
  }
  return shortest(value);
}

}  // namespace teleqos
