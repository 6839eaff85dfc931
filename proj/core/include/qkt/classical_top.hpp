#pragma once

#include <vector>

#include "qkt/spin_algebra.hpp"

namespace qkt {

// Kicked-top parameters. Time is measured in units of the kick period, so
// tau is fixed at 1.
struct TopParams {
  SpinQuantum spin = SpinQuantum::from_twice_j(8);
  double kappa = 3.0;  // twist strength
  double p = kPi / 2;  // rotation angle per kick
  double tau = 1.0;

  /// Throws std::invalid_argument for kappa < 0, non-finite p, or tau != 1.
  void validate() const;
};

// Normalized classical spin (<J>/j) on the unit sphere.
struct ClassicalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  static ClassicalPoint from_spherical(SphericalCoord c);
  /// theta = acos(z), phi = atan2(y, x) folded into [0, 2 pi).
  SphericalCoord to_spherical() const;
  double norm() const;
};

// Tracks how far iterates wander from the unit sphere. Points are only
// renormalized once the drift exceeds kRenormalizeThreshold.
struct DriftMonitor {
  static constexpr double kRenormalizeThreshold = 1e-12;

  double max_drift = 0.0;
  int renormalizations = 0;
};

/// One kick-to-kick step: rotate by p about y, then twist about x by kappa * x.
ClassicalPoint classical_step(const ClassicalPoint& pt, const TopParams& params,
                              DriftMonitor* monitor = nullptr);

/// Exact inverse of classical_step (untwist, then un-rotate).
ClassicalPoint classical_step_inverse(const ClassicalPoint& pt, const TopParams& params);

/// [pt0, step(pt0), ..., step^n(pt0)].
std::vector<ClassicalPoint> trajectory(const ClassicalPoint& pt0, const TopParams& params, int n_kicks,
                                       DriftMonitor* monitor = nullptr);

struct PortraitRow {
  int ic_index;
  int kick;
  double theta;
  double phi;
};

/// Stroboscopic (theta, phi) of every iterate of every initial condition,
/// ordered by initial condition then kick.
std::vector<PortraitRow> phase_portrait(const std::vector<SphericalCoord>& ics, const TopParams& params,
                                        int n_kicks);

/// n_cos x n_phi cell-centred grid, uniform in (cos theta, phi).
std::vector<SphericalCoord> uniform_sphere_grid(int n_cos, int n_phi);

}  // namespace qkt
