#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace corrkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Validation thresholds shared by every module.
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double min_eigenvalue = -1e-10;
inline constexpr double completeness = 1e-10;
inline constexpr double norm = 1e-10;
// Negative eigenvalues above this are noise and are clipped to zero.
inline constexpr double clip = 1e-12;
inline constexpr double probability_floor = 1e-12;
inline constexpr double schmidt_cutoff = 1e-12;
inline constexpr double majorization = 1e-10;
inline constexpr double violation = 1e-8;
inline constexpr double optimizer_allowance = 1e-4;
}  // namespace tol

inline constexpr int max_total_dimension = 4096;

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: wrong site, empty set, malformed parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix or vector violates a state/operation invariant.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// The requested quantity has no supported evaluation route for this input.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace corrkit
