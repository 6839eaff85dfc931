#include "qkt/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkt {

std::array<Matrix2, 3> pauli_matrices() {
  Matrix2 sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -kI, kI, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  return {sx, sy, sz};
}

namespace {

QubitState qubit_from_mean(const MeanSpin& mean_j, SpinQuantum spin) {
  if (spin.twice_j() < 1) throw std::invalid_argument("reduced_qubit: needs 2j >= 1");
  const double two_j = spin.twice_j();
  QubitState q;
  const auto sigma = pauli_matrices();
  q.rho2 = 0.5 * Matrix2::Identity();
  for (int a = 0; a < 3; ++a) {
    q.mean_spin[static_cast<std::size_t>(a)] = mean_j[static_cast<std::size_t>(a)] / two_j;
    q.rho2 += q.mean_spin[static_cast<std::size_t>(a)] * sigma[static_cast<std::size_t>(a)];
  }
  const double len = std::hypot(q.mean_spin[0], q.mean_spin[1], q.mean_spin[2]);
  // Eigenvalues of rho2 are 1/2 +- |<s>|.
  if (0.5 - len < -1e-9) throw InvariantViolation("reduced_qubit: reduced state is not positive semidefinite");
  return q;
}

}  // namespace

QubitState reduced_qubit(const SpinState& state, const AngularMomentumOps& ops) {
  return qubit_from_mean(mean_spin(state, ops), ops.spin);
}

QubitState reduced_qubit(const DensityMatrix& rho, const AngularMomentumOps& ops) {
  return qubit_from_mean(mean_spin(rho.matrix(), ops), ops.spin);
}

double linear_entropy(const MeanSpin& mean_j, SpinQuantum spin) {
  if (spin.twice_j() < 1) throw std::invalid_argument("linear_entropy: needs 2j >= 1");
  const double j = spin.j();
  const double len = std::hypot(mean_j[0], mean_j[1], mean_j[2]);
  if (!std::isfinite(len) || len > j + 1e-9) {
    throw std::invalid_argument("linear_entropy: |<J>| = " + std::to_string(len) + " exceeds j");
  }
  const double s = 0.5 * (1.0 - (len * len) / (j * j));
  return std::clamp(s, 0.0, 0.5);
}

Matrix qubit_rest_isometry(SpinQuantum spin) {
  if (spin.twice_j() < 1) throw std::invalid_argument("qubit_rest_isometry: needs 2j >= 1");
  const int d = spin.dim();
  const int rest = spin.twice_j();
  const double j = spin.j();
  Matrix v = Matrix::Zero(2 * rest, d);
  for (int i = 0; i < d; ++i) {
    const double m = i - j;
    // |up> (x) |j-1/2, m-1/2>: rest index i-1.
    if (i >= 1) v(0 * rest + (i - 1), i) = std::sqrt((j + m) / (2.0 * j));
    // |down> (x) |j-1/2, m+1/2>: rest index i.
    if (i <= rest - 1) v(1 * rest + i, i) = std::sqrt((j - m) / (2.0 * j));
  }
  return v;
}

Matrix2 EmbeddedState::qubit_marginal() const {
  Matrix2 out = Matrix2::Zero();
  for (int q = 0; q < 2; ++q) {
    for (int qp = 0; qp < 2; ++qp) {
      out(q, qp) = matrix.block(q * rest_dim, qp * rest_dim, rest_dim, rest_dim).trace();
    }
  }
  return out;
}

EmbeddedState embed_qubit_rest(const DensityMatrix& rho, SpinQuantum spin) {
  if (rho.dim() != spin.dim()) throw std::invalid_argument("embed_qubit_rest: dimension mismatch");
  const Matrix v = qubit_rest_isometry(spin);
  return {v * rho.matrix() * v.adjoint(), spin.twice_j()};
}

EmbeddedState embed_qubit_rest(const SpinState& state, SpinQuantum spin) {
  return embed_qubit_rest(DensityMatrix::pure(state), spin);
}

Matrix partial_transpose_qubit(const EmbeddedState& embedded) {
  const int r = embedded.rest_dim;
  Matrix out(2 * r, 2 * r);
  // (q r, q' r') <- (q' r, q r')
  for (int q = 0; q < 2; ++q) {
    for (int qp = 0; qp < 2; ++qp) {
      out.block(q * r, qp * r, r, r) = embedded.matrix.block(qp * r, q * r, r, r);
    }
  }
  return out;
}

double negativity(const DensityMatrix& rho, SpinQuantum spin) {
  const Matrix pt = partial_transpose_qubit(embed_qubit_rest(rho, spin));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InvariantViolation("negativity: eigendecomposition failed");
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= -kNegativityFloor) neg -= lambda;
  }
  return neg;
}

double negativity(const SpinState& state, SpinQuantum spin) { return negativity(DensityMatrix::pure(state), spin); }

double purity(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return m.cwiseAbs2().sum();
}

double time_average(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("time_average: empty series");
  return std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
}

}  // namespace qkt
