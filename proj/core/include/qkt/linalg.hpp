#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qkt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when a computed object breaks one of its numerical invariants
// (unitarity, trace, positivity, eigen-residual). Bad *inputs* are reported
// with std::invalid_argument instead.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest |a_ij - conj(a_ji)|.
double hermiticity_error(const Matrix& m);

/// Largest |(U^dagger U - 1)_ij|.
double unitarity_error(const Matrix& u);

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// exp(factor * h) for Hermitian h, through its eigendecomposition.
/// `h` must be Hermitian to 1e-10; the result is exactly V exp(factor*lambda) V^dagger.
Matrix exp_hermitian(const Matrix& h, Complex factor);

}  // namespace qkt
