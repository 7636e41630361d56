#ifndef RHEX_ERRORS_HPP_
#define RHEX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rhex {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad boxes, bad ranges, contract violations at setup.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File-level parse failure carrying "file:line:" context.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& file, int line, const std::string& msg)
      : ConfigError(file + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Non-finite state while simulating a model or plant.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// No feasible candidate exists for the current design step.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Filesystem / stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rhex

#endif  // RHEX_ERRORS_HPP_
