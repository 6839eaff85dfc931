#pragma once

#include <array>

#include "qkt/linalg.hpp"

namespace qkt {

// Spin magnitude j, stored as the integer 2j so half-integers are exact.
class SpinQuantum {
 public:
  /// Throws std::invalid_argument unless 2j is a non-negative integer.
  static SpinQuantum from_j(double j);
  static SpinQuantum from_twice_j(int twice_j);

  double j() const { return 0.5 * twice_j_; }
  int twice_j() const { return twice_j_; }
  int dim() const { return twice_j_ + 1; }

  friend bool operator==(SpinQuantum, SpinQuantum) = default;

 private:
  explicit SpinQuantum(int twice_j) : twice_j_(twice_j) {}
  int twice_j_;
};

// Basis |j,m> with m ascending from -j (index 0) to +j (index 2j); hbar = 1.
struct AngularMomentumOps {
  SpinQuantum spin;
  Matrix jx;
  Matrix jy;
  Matrix jz;

  int dim() const { return spin.dim(); }
};

struct SphericalCoord {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  /// Folds an arbitrary (theta, phi) pair into the canonical chart.
  static SphericalCoord canonical(double theta, double phi);
};

// Unit-norm state vector in the |j,m> basis.
class SpinState {
 public:
  /// Throws std::invalid_argument if |norm - 1| > 1e-10.
  explicit SpinState(Vector amplitudes);
  /// Rescales to unit norm first; rejects the zero vector.
  static SpinState normalized(Vector amplitudes);
  /// The Dicke state |j, m>.
  static SpinState basis(SpinQuantum spin, double m);

  const Vector& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }

 private:
  Vector amps_;
};

AngularMomentumOps build_operators(SpinQuantum spin);

/// exp(i theta [Jx sin(phi) - Jy cos(phi)]) |j, j>.
SpinState coherent_state(const AngularMomentumOps& ops, SphericalCoord dir);

/// <psi|op|psi>; `op` must be Hermitian and of matching dimension.
double expectation(const SpinState& state, const Matrix& op);
/// Tr(rho op) for an arbitrary square rho of matching dimension.
double expectation(const Matrix& rho, const Matrix& op);

using MeanSpin = std::array<double, 3>;

MeanSpin mean_spin(const SpinState& state, const AngularMomentumOps& ops);
MeanSpin mean_spin(const Matrix& rho, const AngularMomentumOps& ops);

}  // namespace qkt
