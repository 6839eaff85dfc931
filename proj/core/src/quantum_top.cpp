#include "qkt/quantum_top.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qkt {

Matrix kick_unitary(const AngularMomentumOps& ops, double p) { return exp_hermitian(ops.jy, -kI * p); }

Matrix twist_unitary(const AngularMomentumOps& ops, double kappa, double duration) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops.jx);
  if (es.info() != Eigen::Success) throw InvariantViolation("twist_unitary: Jx eigendecomposition failed");
  const double scale = kappa * duration / (2.0 * ops.spin.j());
  Vector phases(ops.dim());
  for (int i = 0; i < ops.dim(); ++i) {
    const double lambda = es.eigenvalues()(i);
    phases(i) = std::exp(-kI * (scale * lambda * lambda));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FloquetOperator floquet_operator(const TopParams& params, const AngularMomentumOps& ops) {
  params.validate();
  if (ops.spin != params.spin) throw std::invalid_argument("floquet_operator: operators built for a different j");
  if (params.spin.twice_j() == 0) {
    return {Matrix::Identity(1, 1), params};
  }
  FloquetOperator f{twist_unitary(ops, params.kappa) * kick_unitary(ops, params.p), params};
  const double err = unitarity_error(f.u);
  if (err > 1e-12) throw InvariantViolation("floquet_operator: unitarity error " + std::to_string(err));
  return f;
}

FloquetOperator floquet_operator(const TopParams& params) {
  return floquet_operator(params, build_operators(params.spin));
}

std::vector<SpinState> evolve(const SpinState& state, const FloquetOperator& floquet, int n_kicks) {
  if (n_kicks < 0) throw std::invalid_argument("evolve: n_kicks must be >= 0");
  if (state.dim() != floquet.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  std::vector<SpinState> out;
  out.reserve(static_cast<std::size_t>(n_kicks) + 1);
  out.push_back(state);
  for (int k = 0; k < n_kicks; ++k) {
    Vector next = floquet.u * out.back().amplitudes();
    const double drift = std::abs(next.norm() - 1.0);
    if (drift > 1e-9) throw InvariantViolation("evolve: norm drift " + std::to_string(drift));
    out.push_back(SpinState::normalized(std::move(next)));
  }
  return out;
}

Matrix FloquetSpectrum::reconstruct() const {
  Vector phases(size());
  for (int n = 0; n < size(); ++n) phases(n) = std::exp(kI * omegas[static_cast<std::size_t>(n)]);
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

namespace {

// Maps an eigenvalue argument into (-pi, pi]. Values within the degeneracy
// gap of -pi are taken to be the +pi eigenvalue.
double fold_phase(double omega) {
  if (omega <= -kPi + kDegeneracyGap) omega += kTwoPi;
  return std::min(omega, kPi);
}

void orthonormalize_columns(Matrix& v, const std::vector<int>& cols) {
  for (std::size_t a = 0; a < cols.size(); ++a) {
    Vector col = v.col(cols[a]);
    for (std::size_t b = 0; b < a; ++b) {
      const auto prev = v.col(cols[b]);
      col -= prev.dot(col) * prev;
    }
    v.col(cols[a]) = col.normalized();
  }
}

void fix_global_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Small slack keeps the choice stable when two components tie.
    if (std::abs(v(i)) > best_mag + 1e-12) {
      best_mag = std::abs(v(i));
      best = i;
    }
  }
  const Complex z = v(best);
  if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
}

}  // namespace

FloquetSpectrum floquet_spectrum(const FloquetOperator& floquet) {
  const Matrix& u = floquet.u;
  const int d = floquet.dim();

  // U is normal, so its Schur form is diagonal and the Schur vectors are an
  // orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw InvariantViolation("floquet_spectrum: Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();

  std::vector<double> raw(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) raw[static_cast<std::size_t>(i)] = fold_phase(std::arg(t(i, i)));

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)];
  });

  FloquetSpectrum spec;
  spec.vectors.resize(d, d);
  for (int n = 0; n < d; ++n) {
    spec.omegas.push_back(raw[static_cast<std::size_t>(order[static_cast<std::size_t>(n)])]);
    spec.vectors.col(n) = q.col(order[static_cast<std::size_t>(n)]);
  }

  // Group (numerically) degenerate eigenphases, including clusters that
  // straddle the branch cut at +-pi.
  std::vector<std::vector<int>> clusters;
  for (int n = 0; n < d; ++n) {
    if (!clusters.empty() && spec.omegas[static_cast<std::size_t>(n)] -
                                     spec.omegas[static_cast<std::size_t>(clusters.back().back())] <
                                 kDegeneracyGap) {
      clusters.back().push_back(n);
    } else {
      clusters.push_back({n});
    }
  }
  if (clusters.size() > 1 && spec.omegas.front() + kTwoPi - spec.omegas.back() < kDegeneracyGap) {
    auto& last = clusters.back();
    last.insert(last.end(), clusters.front().begin(), clusters.front().end());
    clusters.erase(clusters.begin());
  }
  for (const auto& cluster : clusters) {
    if (cluster.size() > 1) orthonormalize_columns(spec.vectors, cluster);
  }

  for (int n = 0; n < d; ++n) {
    fix_global_phase(spec.vectors.col(n));
    const Vector& v = spec.vectors.col(n);
    const double residual = (u * v - std::exp(kI * spec.omegas[static_cast<std::size_t>(n)]) * v).norm();
    if (residual > kSpectrumResidualTol) {
      throw InvariantViolation("floquet_spectrum: eigenpair residual " + std::to_string(residual));
    }
  }
  return spec;
}

std::vector<Overlap> overlap_distribution(const SpinState& state, const FloquetSpectrum& spec) {
  if (state.dim() != spec.vectors.rows()) throw std::invalid_argument("overlap_distribution: dimension mismatch");
  const Vector amps = spec.vectors.adjoint() * state.amplitudes();
  std::vector<Overlap> out;
  out.reserve(static_cast<std::size_t>(spec.size()));
  for (int n = 0; n < spec.size(); ++n) out.push_back({spec.omegas[static_cast<std::size_t>(n)], std::norm(amps(n))});
  return out;
}

SupportMeasure support_measure(const SpinState& state, const FloquetSpectrum& spec) {
  if (state.dim() != spec.vectors.rows()) throw std::invalid_argument("support_measure: dimension mismatch");
  const Vector amps = spec.vectors.adjoint() * state.amplitudes();
  const double s = amps.cwiseAbs().sum();
  return {s, s / std::sqrt(static_cast<double>(state.dim()))};
}

double participation_ratio(const std::vector<Overlap>& overlaps) {
  double sum_sq = 0.0;
  for (const auto& o : overlaps) sum_sq += o.f * o.f;
  if (!(sum_sq > 0.0)) throw std::invalid_argument("participation_ratio: empty distribution");
  return 1.0 / sum_sq;
}

double HusimiGrid::integral() const {
  if (thetas.size() < 2 || phis.empty()) return 0.0;
  const double d_theta = thetas[1] - thetas[0];
  const double d_phi = kTwoPi / static_cast<double>(phis.size());
  double total = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double w = (i == 0 || i + 1 == thetas.size()) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t k = 0; k < phis.size(); ++k) row += at(i, k);
    total += w * std::sin(thetas[i]) * row;
  }
  return total * d_theta * d_phi;
}

namespace {

// Evaluates `density(coherent)` over the grid. For fixed phi the coherent
// states exp(i theta G(phi))|j,j> share one eigendecomposition of G(phi).
template <typename Density>
HusimiGrid husimi_grid(const AngularMomentumOps& ops, int n_theta, int n_phi, Density density) {
  if (n_theta < 2 || n_phi < 2) throw std::invalid_argument("husimi: grid needs at least 2 x 2 nodes");
  const int d = ops.dim();
  const double norm = (d) / (4.0 * kPi);

  HusimiGrid grid;
  for (int i = 0; i < n_theta; ++i) grid.thetas.push_back(kPi * i / (n_theta - 1));
  for (int k = 0; k < n_phi; ++k) grid.phis.push_back(kTwoPi * k / n_phi);
  grid.values.assign(static_cast<std::size_t>(n_theta) * n_phi, 0.0);

  Vector top = Vector::Zero(d);
  top(d - 1) = 1.0;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = grid.phis[static_cast<std::size_t>(k)];
    const Matrix generator = std::sin(phi) * ops.jx - std::cos(phi) * ops.jy;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (generator + generator.adjoint()));
    const Vector top_in_eigenbasis = es.eigenvectors().adjoint() * top;
    for (int i = 0; i < n_theta; ++i) {
      const double theta = grid.thetas[static_cast<std::size_t>(i)];
      const Vector phases = (kI * theta * es.eigenvalues().cast<Complex>()).array().exp();
      const Vector coherent = es.eigenvectors() * phases.cwiseProduct(top_in_eigenbasis);
      grid.values[static_cast<std::size_t>(i) * n_phi + k] = std::max(0.0, norm * density(coherent));
    }
  }
  return grid;
}

}  // namespace

HusimiGrid husimi(const SpinState& state, const AngularMomentumOps& ops, int n_theta, int n_phi) {
  if (state.dim() != ops.dim()) throw std::invalid_argument("husimi: dimension mismatch");
  const Vector& psi = state.amplitudes();
  return husimi_grid(ops, n_theta, n_phi, [&](const Vector& c) { return std::norm(c.dot(psi)); });
}

HusimiGrid husimi(const DensityMatrix& rho, const AngularMomentumOps& ops, int n_theta, int n_phi) {
  if (rho.dim() != ops.dim()) throw std::invalid_argument("husimi: dimension mismatch");
  const Matrix& m = rho.matrix();
  return husimi_grid(ops, n_theta, n_phi, [&](const Vector& c) { return c.dot(m * c).real(); });
}

}  // namespace qkt
