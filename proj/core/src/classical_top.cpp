#include "qkt/classical_top.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkt {

void TopParams::validate() const {
  if (!std::isfinite(kappa) || kappa < 0.0) throw std::invalid_argument("TopParams: kappa must be >= 0");
  if (!std::isfinite(p)) throw std::invalid_argument("TopParams: p must be finite");
  if (tau != 1.0) throw std::invalid_argument("TopParams: tau is fixed to 1");
}

ClassicalPoint ClassicalPoint::from_spherical(SphericalCoord c) {
  return {std::sin(c.theta) * std::cos(c.phi), std::sin(c.theta) * std::sin(c.phi), std::cos(c.theta)};
}

SphericalCoord ClassicalPoint::to_spherical() const {
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi -= kTwoPi;
  return {theta, phi};
}

double ClassicalPoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

ClassicalPoint classical_step(const ClassicalPoint& pt, const TopParams& params, DriftMonitor* monitor) {
  const double c = std::cos(params.p);
  const double s = std::sin(params.p);
  // State right after the kick, before the twist.
  const double x_kicked = pt.x * c + pt.z * s;
  const double z_kicked = pt.z * c - pt.x * s;
  const double angle = params.kappa * x_kicked;
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);

  ClassicalPoint out{x_kicked, pt.y * ca - z_kicked * sa, z_kicked * ca + pt.y * sa};

  const double drift = std::abs(out.norm() - 1.0);
  if (monitor) monitor->max_drift = std::max(monitor->max_drift, drift);
  if (drift > DriftMonitor::kRenormalizeThreshold) {
    const double n = out.norm();
    out = {out.x / n, out.y / n, out.z / n};
    if (monitor) ++monitor->renormalizations;
  }
  return out;
}

ClassicalPoint classical_step_inverse(const ClassicalPoint& pt, const TopParams& params) {
  // The twist angle depends only on x, which the twist leaves unchanged.
  const double angle = params.kappa * pt.x;
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  const double y = pt.y * ca + pt.z * sa;
  const double z_kicked = pt.z * ca - pt.y * sa;
  const double c = std::cos(params.p);
  const double s = std::sin(params.p);
  return {pt.x * c - z_kicked * s, y, z_kicked * c + pt.x * s};
}

std::vector<ClassicalPoint> trajectory(const ClassicalPoint& pt0, const TopParams& params, int n_kicks,
                                       DriftMonitor* monitor) {
  if (n_kicks < 0) throw std::invalid_argument("trajectory: n_kicks must be >= 0");
  std::vector<ClassicalPoint> out;
  out.reserve(static_cast<std::size_t>(n_kicks) + 1);
  out.push_back(pt0);
  for (int k = 0; k < n_kicks; ++k) out.push_back(classical_step(out.back(), params, monitor));
  return out;
}

std::vector<PortraitRow> phase_portrait(const std::vector<SphericalCoord>& ics, const TopParams& params,
                                        int n_kicks) {
  if (ics.empty()) throw std::invalid_argument("phase_portrait: no initial conditions");
  params.validate();
  std::vector<PortraitRow> rows;
  rows.reserve(ics.size() * (static_cast<std::size_t>(n_kicks) + 1));
  for (std::size_t i = 0; i < ics.size(); ++i) {
    const auto points = trajectory(ClassicalPoint::from_spherical(ics[i]), params, n_kicks);
    for (std::size_t k = 0; k < points.size(); ++k) {
      const SphericalCoord c = points[k].to_spherical();
      rows.push_back({static_cast<int>(i), static_cast<int>(k), c.theta, c.phi});
    }
  }
  return rows;
}

std::vector<SphericalCoord> uniform_sphere_grid(int n_cos, int n_phi) {
  if (n_cos < 1 || n_phi < 1) throw std::invalid_argument("uniform_sphere_grid: sizes must be positive");
  std::vector<SphericalCoord> grid;
  grid.reserve(static_cast<std::size_t>(n_cos) * n_phi);
  for (int a = 0; a < n_cos; ++a) {
    const double cos_theta = -1.0 + (2.0 * a + 1.0) / n_cos;
    for (int b = 0; b < n_phi; ++b) {
      grid.push_back({std::acos(cos_theta), kTwoPi * (b + 0.5) / n_phi});
    }
  }
  return grid;
}

}  // namespace qkt
