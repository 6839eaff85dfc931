#pragma once

#include <vector>

#include "qkt/classical_top.hpp"
#include "qkt/density_matrix.hpp"
#include "qkt/spin_algebra.hpp"

namespace qkt {

// Coherence-to-scattering figure of merit for Cs driven between the two D1
// hyperfine components.
inline constexpr double kCesiumBeta = 8.2;

/// gamma_s = kappa / (2 F tau beta), with hbar = 1.
double gamma_from_kappa(double kappa, SpinQuantum f, double beta, double tau = 1.0);

/// p = Omega_L * T.
double kick_angle(double omega_larmor, double duration);

enum class JumpModel {
  // L_a = sqrt(gamma_s / j(j+1)) J_a for a = x, y, z. Hermitian (so the
  // channel is unital) with total jump rate gamma_s for every state.
  Isotropic,
};

struct DecoherenceParams {
  double gamma_s = 0.0;
  double beta = kCesiumBeta;
  JumpModel model = JumpModel::Isotropic;

  /// Scattering rate implied by the twist strength of `top` at this beta.
  static DecoherenceParams from_beta(const TopParams& top, double beta = kCesiumBeta);
  void validate() const;
};

struct JumpSet {
  std::vector<Matrix> ops;

  /// sum_q D_q^dagger D_q; zero matrix of size `dim` for an empty set.
  Matrix rate_operator(int dim) const;
};

JumpSet isotropic_jump_set(double gamma_s, const AngularMomentumOps& ops);
JumpSet make_jump_set(const DecoherenceParams& dec, const AngularMomentumOps& ops);

/// Column-stacking vec(rho) and its inverse.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);

// Linear map on column-stacked d x d matrices (a d^2 x d^2 matrix).
struct Superoperator {
  Matrix matrix;
  int dim = 0;

  Matrix apply(const Matrix& rho) const { return unvectorize(matrix * vectorize(rho), dim); }
};

/// Generator of d rho/dt = -i[H, rho] + sum_q (D rho D^dagger - 1/2 {D^dagger D, rho}).
Superoperator lindblad_superoperator(const Matrix& h, const JumpSet& jumps);

/// rho -> U rho U^dagger.
Superoperator conjugation_superoperator(const Matrix& u);

/// Largest |(vec(1)^dagger L)_k|; zero for trace-preserving generators.
double trace_preservation_error(const Superoperator& generator);

/// Choi matrix sum_ij |i><j| (x) Phi(|i><j|) of a channel given as a superoperator.
Matrix choi_matrix(const Superoperator& channel);

/// Smallest eigenvalue of the (Hermitian part of the) Choi matrix.
double choi_min_eigenvalue(const Superoperator& channel);

struct PropagationDiagnostics {
  double max_hermiticity_deviation = 0.0;  // before symmetrization
  double max_trace_drift = 0.0;
  int steps = 0;
};

inline constexpr double kTraceAbortTol = 1e-6;

// exp(duration * L) computed once (Pade scaling-and-squaring) and reused.
class IntervalPropagator {
 public:
  IntervalPropagator(const Superoperator& generator, double duration);

  /// Applies the channel, then symmetrizes; throws InvariantViolation if the
  /// trace drifts by more than 1e-6 or the result is not a valid state.
  DensityMatrix apply(const DensityMatrix& rho, PropagationDiagnostics* diag = nullptr) const;

  const Superoperator& channel() const { return channel_; }

 private:
  Superoperator channel_;
};

DensityMatrix propagate_interval(const DensityMatrix& rho, const Superoperator& generator, double duration,
                                 PropagationDiagnostics* diag = nullptr);

/// Hamiltonian of the twist, kappa / (2 j tau) Jx^2.
Matrix twist_hamiltonian(const AngularMomentumOps& ops, const TopParams& params);

/// Kick-then-dissipative-twist evolution. Element k is rho after k full
/// periods; element 0 is rho0.
std::vector<DensityMatrix> open_kicked_top(const DensityMatrix& rho0, const TopParams& params,
                                           const DecoherenceParams& dec, int n_kicks,
                                           PropagationDiagnostics* diag = nullptr);
std::vector<DensityMatrix> open_kicked_top(const DensityMatrix& rho0, const TopParams& params, const JumpSet& jumps,
                                           int n_kicks, PropagationDiagnostics* diag = nullptr);

}  // namespace qkt
