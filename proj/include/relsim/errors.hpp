#pragma once

#include <stdexcept>
#include <string>

namespace relsim {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class EmptyWindowDuration : public Error {
 public:
  using Error::Error;
};

class InvalidUtility : public Error {
 public:
  using Error::Error;
};

class InfeasibleBudget : public Error {
 public:
  using Error::Error;
};

class AllScoresZero : public Error {
 public:
  using Error::Error;
};

class NoRunningPods : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class MalformedTrace : public Error {
 public:
  using Error::Error;
};

}  // namespace relsim
