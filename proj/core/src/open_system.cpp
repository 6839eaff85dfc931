#include "qkt/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qkt/quantum_top.hpp"

namespace qkt {

double gamma_from_kappa(double kappa, SpinQuantum f, double beta, double tau) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("gamma_from_kappa: kappa must be >= 0");
  if (!(f.j() > 0.0)) throw std::invalid_argument("gamma_from_kappa: F must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("gamma_from_kappa: beta must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("gamma_from_kappa: tau must be positive");
  return kappa / (2.0 * f.j() * tau * beta);
}

double kick_angle(double omega_larmor, double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("kick_angle: duration must be >= 0");
  return omega_larmor * duration;
}

DecoherenceParams DecoherenceParams::from_beta(const TopParams& top, double beta) {
  return {gamma_from_kappa(top.kappa, top.spin, beta, top.tau), beta, JumpModel::Isotropic};
}

void DecoherenceParams::validate() const {
  if (!(gamma_s >= 0.0) || !std::isfinite(gamma_s)) throw std::invalid_argument("gamma_s must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
}

Matrix JumpSet::rate_operator(int dim) const {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& d : ops) sum += d.adjoint() * d;
  return sum;
}

JumpSet isotropic_jump_set(double gamma_s, const AngularMomentumOps& ops) {
  if (!(gamma_s >= 0.0)) throw std::invalid_argument("isotropic_jump_set: gamma_s must be >= 0");
  const double j = ops.spin.j();
  // For j = 0 every J_a vanishes; the set is zero whatever the prefactor.
  const double scale = j > 0.0 ? std::sqrt(gamma_s / (j * (j + 1.0))) : 0.0;
  return {{scale * ops.jx, scale * ops.jy, scale * ops.jz}};
}

JumpSet make_jump_set(const DecoherenceParams& dec, const AngularMomentumOps& ops) {
  dec.validate();
  switch (dec.model) {
    case JumpModel::Isotropic:
      return isotropic_jump_set(dec.gamma_s, ops);
  }
  throw std::invalid_argument("make_jump_set: unknown jump model");
}

Vector vectorize(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw std::invalid_argument("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Superoperator lindblad_superoperator(const Matrix& h, const JumpSet& jumps) {
  if (h.rows() != h.cols()) throw std::invalid_argument("lindblad_superoperator: H not square");
  const int d = static_cast<int>(h.rows());
  const Matrix id = Matrix::Identity(d, d);
  // vec(A X B) = (B^T (x) A) vec(X)
  Matrix gen = -kI * (Matrix(Eigen::kroneckerProduct(id, h)) - Matrix(Eigen::kroneckerProduct(h.transpose(), id)));
  for (const auto& op : jumps.ops) {
    if (op.rows() != d || op.cols() != d) throw std::invalid_argument("lindblad_superoperator: jump size mismatch");
    const Matrix rate = op.adjoint() * op;
    gen += Matrix(Eigen::kroneckerProduct(op.conjugate(), op));
    gen -= 0.5 * Matrix(Eigen::kroneckerProduct(id, rate));
    gen -= 0.5 * Matrix(Eigen::kroneckerProduct(rate.transpose(), id));
  }
  return {std::move(gen), d};
}

Superoperator conjugation_superoperator(const Matrix& u) {
  return {Matrix(Eigen::kroneckerProduct(u.conjugate(), u)), static_cast<int>(u.rows())};
}

double trace_preservation_error(const Superoperator& generator) {
  const Vector id = vectorize(Matrix::Identity(generator.dim, generator.dim));
  return (id.adjoint() * generator.matrix).cwiseAbs().maxCoeff();
}

Matrix choi_matrix(const Superoperator& channel) {
  const int d = channel.dim;
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // vec(|i><j|) is the unit vector at i + j d.
      const Matrix image = unvectorize(channel.matrix.col(i + j * d), d);
      choi.block(i * d, j * d, d, d) = image;
    }
  }
  return choi;
}

double choi_min_eigenvalue(const Superoperator& channel) {
  const Matrix c = choi_matrix(channel);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

IntervalPropagator::IntervalPropagator(const Superoperator& generator, double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("IntervalPropagator: duration must be >= 0");
  }
  const Matrix scaled = generator.matrix * Complex(duration);
  channel_ = {duration == 0.0 ? Matrix(Matrix::Identity(scaled.rows(), scaled.cols())) : Matrix(scaled.exp()),
              generator.dim};
}

DensityMatrix IntervalPropagator::apply(const DensityMatrix& rho, PropagationDiagnostics* diag) const {
  if (rho.dim() != channel_.dim) throw std::invalid_argument("IntervalPropagator: dimension mismatch");
  Matrix next = channel_.apply(rho.matrix());
  const double herm = hermiticity_error(next);
  const double drift = std::abs(next.trace().real() - 1.0);
  if (diag) {
    diag->max_hermiticity_deviation = std::max(diag->max_hermiticity_deviation, herm);
    diag->max_trace_drift = std::max(diag->max_trace_drift, drift);
    ++diag->steps;
  }
  if (drift > kTraceAbortTol) {
    throw InvariantViolation("propagation: trace drifted by " + std::to_string(drift));
  }
  next = 0.5 * (next + next.adjoint());
  try {
    return DensityMatrix(std::move(next));
  } catch (const std::invalid_argument& e) {
    throw InvariantViolation(std::string("propagation produced an invalid state: ") + e.what());
  }
}

DensityMatrix propagate_interval(const DensityMatrix& rho, const Superoperator& generator, double duration,
                                 PropagationDiagnostics* diag) {
  return IntervalPropagator(generator, duration).apply(rho, diag);
}

Matrix twist_hamiltonian(const AngularMomentumOps& ops, const TopParams& params) {
  return (params.kappa / (2.0 * ops.spin.j() * params.tau)) * (ops.jx * ops.jx);
}

std::vector<DensityMatrix> open_kicked_top(const DensityMatrix& rho0, const TopParams& params, const JumpSet& jumps,
                                           int n_kicks, PropagationDiagnostics* diag) {
  params.validate();
  if (n_kicks < 0) throw std::invalid_argument("open_kicked_top: n_kicks must be >= 0");
  if (rho0.dim() != params.spin.dim()) throw std::invalid_argument("open_kicked_top: dimension mismatch");
  if (params.spin.twice_j() < 1) throw std::invalid_argument("open_kicked_top: needs 2j >= 1");

  const AngularMomentumOps ops = build_operators(params.spin);
  const Matrix kick = kick_unitary(ops, params.p);
  const IntervalPropagator twist(lindblad_superoperator(twist_hamiltonian(ops, params), jumps), params.tau);

  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(n_kicks) + 1);
  out.push_back(rho0);
  for (int k = 0; k < n_kicks; ++k) {
    Matrix kicked = kick * out.back().matrix() * kick.adjoint();
    kicked = 0.5 * (kicked + kicked.adjoint());
    out.push_back(twist.apply(DensityMatrix(std::move(kicked)), diag));
  }
  return out;
}

std::vector<DensityMatrix> open_kicked_top(const DensityMatrix& rho0, const TopParams& params,
                                           const DecoherenceParams& dec, int n_kicks, PropagationDiagnostics* diag) {
  return open_kicked_top(rho0, params, make_jump_set(dec, build_operators(params.spin)), n_kicks, diag);
}

}  // namespace qkt
