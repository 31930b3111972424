#pragma once

#include <stdexcept>
#include <string>

namespace angle_rigidity {

// Base of every error thrown by the library. Each subclass maps to one
// failure named in the interface contracts, so callers can catch narrowly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitVector : public Error {
 public:
  using Error::Error;
};

class InvalidStep : public Error {
 public:
  using Error::Error;
};

class VertexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotAnEdge : public Error {
 public:
  using Error::Error;
};

class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

class DegenerateAllCoincident : public Error {
 public:
  using Error::Error;
};

class NotAnEquilibrium : public Error {
 public:
  using Error::Error;
};

class NotInfinitesimallyAngleRigid : public Error {
 public:
  using Error::Error;
};

class NoManeuverTarget : public Error {
 public:
  using Error::Error;
};

class NonPositiveSeries : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Integration left the admissible region. `time` is the simulated time at
// which the guard fired.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace angle_rigidity
