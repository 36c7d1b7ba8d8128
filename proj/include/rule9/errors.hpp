#pragma once

#include <stdexcept>
#include <string>

namespace rule9 {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (chart, CSV, scenario file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Internal protocol violation, e.g. an event the automaton does not accept.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace rule9
