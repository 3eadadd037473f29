#pragma once

#include <stdexcept>
#include <string>

namespace nus {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented domain (bad alpha, bad bit width, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A requested segment count cannot be represented on the grid.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// The signal carries no derivative energy (it is constant).
class DegenerateSignalError : public Error {
public:
  using Error::Error;
};

class EncodingError : public Error {
public:
  using Error::Error;
};

class DecodeError : public Error {
public:
  using Error::Error;
};

}  // namespace nus
