#pragma once

#include <stdexcept>
#include <string>

namespace rieszlab {

// Base of every error raised by the library. Each subclass carries a short
// machine-readable kind() so reports can name the failure without RTTI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NotSelfAdjoint"; }
};

class NotPositive : public Error {
 public:
  NotPositive(const std::string& what, double lambda_min)
      : Error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }
  const char* kind() const noexcept override { return "NotPositive"; }

 private:
  double lambda_min_;
};

class NumericallySingular : public Error {
 public:
  NumericallySingular(const std::string& what, double sigma_min)
      : Error(what), sigma_min_(sigma_min) {}
  double sigma_min() const noexcept { return sigma_min_; }
  const char* kind() const noexcept override { return "NumericallySingular"; }

 private:
  double sigma_min_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DimensionMismatch"; }
};

class IndexTooLarge : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "IndexTooLarge"; }
};

class OracleMismatch : public Error {
 public:
  OracleMismatch(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }
  const char* kind() const noexcept override { return "OracleMismatch"; }

 private:
  double deviation_;
};

class InconsistentPrefix : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InconsistentPrefix"; }
};

class WrongAlphaKind : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "WrongAlphaKind"; }
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonFiniteValue"; }
};

// Configuration error located by a JSON pointer such as "/checks/0".
class ParseError : public Error {
 public:
  ParseError(std::string path, std::string reason)
      : Error(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& reason() const noexcept { return reason_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  std::string path_;
  std::string reason_;
};

}  // namespace rieszlab
