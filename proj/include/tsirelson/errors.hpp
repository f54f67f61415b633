#pragma once

#include <stdexcept>
#include <string>

namespace tsirelson {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed literal or argument (vector, family, theta, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input violates a precondition (non-successive blocks, theta out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configured size cap was hit (DP support, oracle support, enumeration size).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// A functional tree is not a member of any K_s for the family.
class CertificateError : public Error {
 public:
  CertificateError(std::string path, const std::string& what)
      : Error(what + " at node " + path), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace tsirelson
