#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bcp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ResonanceError : public Error {
 public:
  ResonanceError(int m, int spatial_index, double magnitude);

  int m() const { return m_; }
  int spatial_index() const { return spatial_index_; }
  double magnitude() const { return magnitude_; }

 private:
  int m_;
  int spatial_index_;
  double magnitude_;
};

/// Neumann data violating the solvability integral.
class IncompatibleDataError : public Error {
 public:
  explicit IncompatibleDataError(double residual);

  double residual() const { return residual_; }

 private:
  double residual_;
};

class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::pair<std::string, std::string>> violations);

  const std::vector<std::pair<std::string, std::string>>& violations() const {
    return violations_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> violations_;
};

}  // namespace bcp
