#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat and specific.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedPresentation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised when a g-equivalence class is requested for the identity element.
class TrivialElement : public Error {
 public:
  using Error::Error;
};

class GeneralPositionError : public Error {
 public:
  using Error::Error;
};

class TransversalityError : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class InapplicableTheorem : public Error {
 public:
  using Error::Error;
};

}  // namespace loopforge
