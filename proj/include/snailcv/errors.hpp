#pragma once

#include <stdexcept>
#include <string>

namespace snailcv {

// Numerical failures (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoMinimumFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoRootInInterval : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidStiffness : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationLeak : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegratorFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Caller passed operands that cannot be combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedModeCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration problems (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public ConfigError {
 public:
  SchemaError(const std::string& field_path, const std::string& what)
      : ConfigError(field_path + ": " + what), path_(field_path) {}
  const std::string& field_path() const { return path_; }

 private:
  std::string path_;
};

class UnitError : public ConfigError {
 public:
  UnitError(const std::string& field_path, const std::string& what)
      : ConfigError(field_path + ": " + what), path_(field_path) {}
  const std::string& field_path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace snailcv
