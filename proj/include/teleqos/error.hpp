#pragma once

#include <stdexcept>
#include <string>

namespace teleqos {

/// Model or scenario parameters outside the domain of a formula.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Scenario text that could not be tokenized or carries a bad value.
/// Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed scenario that violates a cross-field rule.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class InsufficientCycles : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownFlow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class EmptyStream : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace teleqos
