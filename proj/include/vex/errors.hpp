#pragma once

#include <stdexcept>
#include <string>

namespace vex {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDimension : Error {
  using Error::Error;
};
struct DegenerateBounds : Error {
  using Error::Error;
};
struct EmptyFamily : Error {
  using Error::Error;
};
struct EmptyIntersection : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct OnSingularity : Error {
  using Error::Error;
};
struct ExponentOverflow : Error {
  using Error::Error;
};
struct ZeroNorm : Error {
  using Error::Error;
};
struct NonFinite : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace vex
