#pragma once

#include <stdexcept>
#include <string>

namespace krignet {

/// Cholesky (or linear solve) failed even at the jitter cap. Signals a
/// numerically singular system or an invalid covariance function.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data. Carries a "file:line:" prefix when raised by a parser.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be opened / read / written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace krignet
