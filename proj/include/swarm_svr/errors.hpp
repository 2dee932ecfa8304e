#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swarm_svr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV content. `row_index` is the 1-based data row (header excluded).
class ParseError : public Error {
 public:
  ParseError(std::size_t row_index, const std::string& what)
      : Error("row " + std::to_string(row_index) + ": " + what), row_index_(row_index) {}
  std::size_t row_index() const { return row_index_; }

 private:
  std::size_t row_index_;
};

class EmptyReportError : public Error {
 public:
  using Error::Error;
};

class ImputationError : public Error {
 public:
  ImputationError(const std::string& parameter, const std::string& what)
      : Error(what), parameter_(parameter) {}
  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double worst_violation, const std::string& what)
      : Error(what), worst_violation_(worst_violation) {}
  double worst_violation() const { return worst_violation_; }

 private:
  double worst_violation_;
};

class TuningError : public Error {
 public:
  using Error::Error;
};

}  // namespace swarm_svr
