#pragma once

#include <vector>

#include "qkt/classical_top.hpp"
#include "qkt/density_matrix.hpp"
#include "qkt/spin_algebra.hpp"

namespace qkt {

// One-period propagator U = exp(-i kappa Jx^2 / 2j) exp(-i p Jy): the kick
// acts on the state first, then the twist.
struct FloquetOperator {
  Matrix u;
  TopParams params;

  int dim() const { return static_cast<int>(u.rows()); }
};

/// exp(-i p Jy).
Matrix kick_unitary(const AngularMomentumOps& ops, double p);
/// exp(-i kappa Jx^2 / (2j) * duration), built in the Jx eigenbasis.
Matrix twist_unitary(const AngularMomentumOps& ops, double kappa, double duration = 1.0);

/// Throws InvariantViolation if U^dagger U deviates from 1 by more than 1e-12.
FloquetOperator floquet_operator(const TopParams& params, const AngularMomentumOps& ops);
FloquetOperator floquet_operator(const TopParams& params);

/// [psi, U psi, ..., U^n psi].
std::vector<SpinState> evolve(const SpinState& state, const FloquetOperator& floquet, int n_kicks);

// Eigenphases in (-pi, pi], ascending; column n of `vectors` is |u_n>, with
// its largest-magnitude component made real and positive.
struct FloquetSpectrum {
  std::vector<double> omegas;
  Matrix vectors;

  int size() const { return static_cast<int>(omegas.size()); }
  /// sum_n exp(i omega_n) |u_n><u_n|.
  Matrix reconstruct() const;
};

inline constexpr double kDegeneracyGap = 1e-8;
inline constexpr double kSpectrumResidualTol = 1e-8;

FloquetSpectrum floquet_spectrum(const FloquetOperator& floquet);

struct Overlap {
  double omega;
  double f;  // |<u_n|psi>|^2
};

std::vector<Overlap> overlap_distribution(const SpinState& state, const FloquetSpectrum& spec);

struct SupportMeasure {
  double s;           // sum_n |<u_n|psi>|
  double normalized;  // s / sqrt(dim)
};

SupportMeasure support_measure(const SpinState& state, const FloquetSpectrum& spec);

/// 1 / sum_n f_n^2.
double participation_ratio(const std::vector<Overlap>& overlaps);

// Husimi distribution sampled on a (theta, phi) grid: theta uniform on
// [0, pi] including both poles, phi uniform on [0, 2 pi) excluding 2 pi.
struct HusimiGrid {
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> values;  // row-major, values[i * phis.size() + k]

  double at(std::size_t i_theta, std::size_t i_phi) const { return values[i_theta * phis.size() + i_phi]; }
  /// Trapezoid in theta (with the sin theta weight), periodic rectangle rule in phi.
  /// On the default 101 x 201 grid this is within 1e-3 of 1 for any state with j <= 4.
  double integral() const;
};

inline constexpr int kDefaultHusimiThetas = 101;
inline constexpr int kDefaultHusimiPhis = 201;

HusimiGrid husimi(const SpinState& state, const AngularMomentumOps& ops, int n_theta = kDefaultHusimiThetas,
                  int n_phi = kDefaultHusimiPhis);
/// (2j+1)/(4 pi) <theta,phi|rho|theta,phi> for a mixed state.
HusimiGrid husimi(const DensityMatrix& rho, const AngularMomentumOps& ops, int n_theta = kDefaultHusimiThetas,
                  int n_phi = kDefaultHusimiPhis);

}  // namespace qkt
