#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopskip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// SDF balance equations have no positive solution.
class InconsistentGraphError : public Error {
 public:
  using Error::Error;
};

// A directed cycle without initial tokens.
class DeadlockError : public Error {
 public:
  DeadlockError(const std::string& what, std::vector<std::size_t> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<std::size_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class PeriodTooShortError : public Error {
 public:
  PeriodTooShortError(const std::string& what, std::size_t actor)
      : Error(what), actor_(actor) {}
  std::size_t actor() const { return actor_; }

 private:
  std::size_t actor_;
};

class TooManyGroupsError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0,
             std::string element = {})
      : Error(format(what, line, element)),
        line_(line),
        element_(std::move(element)) {}
  std::size_t line() const { return line_; }
  const std::string& element() const { return element_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            const std::string& element) {
    std::string out = what;
    if (!element.empty()) out += " (element <" + element + ">)";
    if (line != 0) out += " at line " + std::to_string(line);
    return out;
  }
  std::size_t line_;
  std::string element_;
};

class UnsupportedFeatureError : public ParseError {
 public:
  using ParseError::ParseError;
};

class GenerationFailedError : public Error {
 public:
  using Error::Error;
};

class OutOfBoxError : public Error {
 public:
  using Error::Error;
};

// Reference front has zero hypervolume, so a ratio is undefined.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace hopskip
