#pragma once

#include <stdexcept>
#include <string>

namespace ccstego {

// Base for every failure raised by the library. The CLI maps the concrete
// type onto an exit code, so each class below stands for one failure family.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed image, matrix or key file.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Two images, matrices or payloads that must agree in shape do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Payload does not fit the cover.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The position generator hit its iteration cap before collecting enough
/// distinct pixels.
class InsufficientCapacity : public CapacityError {
 public:
  using CapacityError::CapacityError;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class ExtractError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccstego
