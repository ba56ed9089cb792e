#pragma once

#include <stdexcept>
#include <string>

namespace mcg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedGenus : public Error {
 public:
  using Error::Error;
};

class MalformedWalk : public Error {
 public:
  using Error::Error;
};

class InessentialCurve : public Error {
 public:
  using Error::Error;
};

class SchemeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

class TranscriptionError : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class SearchFailure : public Error {
 public:
  using Error::Error;
};

/// Parse error carrying the 0-based character offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace mcg
