#pragma once

#include "qkt/linalg.hpp"
#include "qkt/spin_algebra.hpp"

namespace qkt {

// Hermitian, unit-trace, positive semidefinite matrix in the |j,m> basis.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kEigenFloor = -1e-9;

  /// Validates all three invariants; throws std::invalid_argument on failure.
  explicit DensityMatrix(Matrix rho);

  static DensityMatrix pure(const SpinState& state);
  static DensityMatrix maximally_mixed(int dim);

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  DensityMatrix(Matrix rho, Unchecked) : rho_(std::move(rho)) {}

  Matrix rho_;
};

}  // namespace qkt
