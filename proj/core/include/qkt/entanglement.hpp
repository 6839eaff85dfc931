#pragma once

#include <span>

#include "qkt/density_matrix.hpp"
#include "qkt/spin_algebra.hpp"

namespace qkt {

using Matrix2 = Eigen::Matrix2cd;

// Reduced state of one of the 2j symmetric qubits. Qubit basis order is
// (|up>, |down>), so sigma_z = diag(1, -1).
struct QubitState {
  Matrix2 rho2;
  std::array<double, 3> mean_spin;  // <s> = <J> / 2j, |<s>| <= 1/2

  double purity() const { return (rho2 * rho2).trace().real(); }
};

std::array<Matrix2, 3> pauli_matrices();

/// rho2 = 1/2 + <J>.sigma / 2j. Throws InvariantViolation if rho2 has an
/// eigenvalue below -1e-9 (the input was not a physical state).
QubitState reduced_qubit(const SpinState& state, const AngularMomentumOps& ops);
QubitState reduced_qubit(const DensityMatrix& rho, const AngularMomentumOps& ops);

/// S = 1/2 [1 - |<J>|^2 / j^2]. Rejects |<J>| > j + 1e-9.
double linear_entropy(const MeanSpin& mean_j, SpinQuantum spin);

/// Isometry from spin j into C^2 (x) C^{2j} (qubit (x) spin j-1/2), built
/// from Clebsch-Gordan coefficients. Row index is q * 2j + r with q = 0 for
/// up, and r the rest-space index with m ascending.
Matrix qubit_rest_isometry(SpinQuantum spin);

struct EmbeddedState {
  Matrix matrix;  // 4j x 4j
  int rest_dim;   // 2j

  /// Partial trace over the spin-(j-1/2) factor.
  Matrix2 qubit_marginal() const;
};

EmbeddedState embed_qubit_rest(const DensityMatrix& rho, SpinQuantum spin);
EmbeddedState embed_qubit_rest(const SpinState& state, SpinQuantum spin);

/// Partial transpose of the qubit factor of an embedded state.
Matrix partial_transpose_qubit(const EmbeddedState& embedded);

inline constexpr double kNegativityFloor = 1e-10;

/// |sum of negative eigenvalues| of the qubit-transposed embedded state,
/// ignoring eigenvalues in (-1e-10, 0).
double negativity(const DensityMatrix& rho, SpinQuantum spin);
double negativity(const SpinState& state, SpinQuantum spin);

double purity(const DensityMatrix& rho);

double time_average(std::span<const double> series);

}  // namespace qkt
