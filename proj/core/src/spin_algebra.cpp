#include "qkt/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qkt/density_matrix.hpp"

namespace qkt {

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermiticity_error: matrix not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitarity_error: matrix not square");
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix exp_hermitian(const Matrix& h, Complex factor) {
  if (hermiticity_error(h) > 1e-10) throw std::invalid_argument("exp_hermitian: generator is not Hermitian");
  const Matrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success) throw InvariantViolation("exp_hermitian: eigendecomposition failed");
  const Vector phases = (factor * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

SpinQuantum SpinQuantum::from_j(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || j < 0.0 || std::abs(twice - rounded) > 1e-12) {
    throw std::invalid_argument("spin j must be a non-negative half-integer, got " + std::to_string(j));
  }
  return SpinQuantum(static_cast<int>(rounded));
}

SpinQuantum SpinQuantum::from_twice_j(int twice_j) {
  if (twice_j < 0) throw std::invalid_argument("2j must be non-negative");
  return SpinQuantum(twice_j);
}

SphericalCoord SphericalCoord::canonical(double theta, double phi) {
  // Reflect theta into [0, pi] (crossing a pole shifts phi by pi).
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {theta, phi};
}

SpinState::SpinState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("SpinState: empty amplitude vector");
  if (std::abs(amps_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("SpinState: amplitudes are not unit norm");
  }
}

SpinState SpinState::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("SpinState: cannot normalize a zero vector");
  return SpinState(amplitudes / n);
}

SpinState SpinState::basis(SpinQuantum spin, double m) {
  const double idx = m + spin.j();
  const double rounded = std::round(idx);
  if (std::abs(idx - rounded) > 1e-12 || rounded < 0 || rounded > spin.twice_j()) {
    throw std::invalid_argument("SpinState::basis: m out of range for this j");
  }
  Vector v = Vector::Zero(spin.dim());
  v(static_cast<Eigen::Index>(rounded)) = 1.0;
  return SpinState(std::move(v));
}

AngularMomentumOps build_operators(SpinQuantum spin) {
  const int d = spin.dim();
  const double j = spin.j();
  Matrix jplus = Matrix::Zero(d, d);
  Matrix jz = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = i - j;
    jz(i, i) = m;
    if (i + 1 < d) jplus(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Matrix jminus = jplus.adjoint();
  AngularMomentumOps ops{spin, 0.5 * (jplus + jminus), (jplus - jminus) / (2.0 * kI), std::move(jz)};
  return ops;
}

SpinState coherent_state(const AngularMomentumOps& ops, SphericalCoord dir) {
  Vector top = Vector::Zero(ops.dim());
  top(ops.dim() - 1) = 1.0;
  if (dir.theta == 0.0) return SpinState(std::move(top));
  const Matrix generator = std::sin(dir.phi) * ops.jx - std::cos(dir.phi) * ops.jy;
  const Matrix rotation = exp_hermitian(generator, kI * dir.theta);
  // Unitary to machine precision; renormalize away the last few ulps.
  return SpinState::normalized(rotation * top);
}

namespace {

void check_operator(const Matrix& op, Eigen::Index dim, const char* who) {
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
  if (hermiticity_error(op) > 1e-10) throw std::invalid_argument(std::string(who) + ": operator is not Hermitian");
}

double real_part_checked(Complex value, const char* who) {
  if (std::abs(value.imag()) > 1e-10) {
    throw InvariantViolation(std::string(who) + ": expectation has imaginary residue " +
                             std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

double expectation(const SpinState& state, const Matrix& op) {
  check_operator(op, state.dim(), "expectation");
  const Vector& psi = state.amplitudes();
  return real_part_checked(psi.dot(op * psi), "expectation");
}

double expectation(const Matrix& rho, const Matrix& op) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("expectation: rho not square");
  check_operator(op, rho.rows(), "expectation");
  return real_part_checked((rho * op).trace(), "expectation");
}

MeanSpin mean_spin(const SpinState& state, const AngularMomentumOps& ops) {
  return {expectation(state, ops.jx), expectation(state, ops.jy), expectation(state, ops.jz)};
}

MeanSpin mean_spin(const Matrix& rho, const AngularMomentumOps& ops) {
  return {expectation(rho, ops.jx), expectation(rho, ops.jy), expectation(rho, ops.jz)};
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) throw std::invalid_argument("DensityMatrix: not square");
  if (hermiticity_error(rho_) > kHermitianTol) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > kTraceTol) throw std::invalid_argument("DensityMatrix: trace != 1");
  if (min_eigenvalue() < kEigenFloor) throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const SpinState& state) {
  const Vector& psi = state.amplitudes();
  return DensityMatrix(psi * psi.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw std::invalid_argument("DensityMatrix: dim must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix hs = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qkt
