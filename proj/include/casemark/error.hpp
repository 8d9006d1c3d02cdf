#pragma once

#include <stdexcept>
#include <string>

namespace casemark {

/// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent or incomplete run inputs (missing alignment, unknown version, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UndefinedOddsError : public DomainError {
 public:
  UndefinedOddsError() : DomainError("odds ratio undefined (0/0)") {}
};

}  // namespace casemark
