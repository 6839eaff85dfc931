#pragma once

#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/output.hpp"

namespace qkt::harness {

struct CommandResult {
  std::vector<FileRecord> files;
};

CommandResult cmd_phase_portrait(const ExperimentConfig& cfg);
CommandResult cmd_entanglement_series(const ExperimentConfig& cfg);
CommandResult cmd_scan_phi(const ExperimentConfig& cfg);
CommandResult cmd_scan_kappa(const ExperimentConfig& cfg);
CommandResult cmd_spectrum(const ExperimentConfig& cfg);
CommandResult cmd_open_system(const ExperimentConfig& cfg);

/// Initial conditions for the portrait: the explicit (theta, phi) if one was
/// given, else a cos(theta)-phi grid or seeded uniform random sample.
std::vector<SphericalCoord> portrait_initial_conditions(const ExperimentConfig& cfg);
std::vector<double> portrait_kappas(const ExperimentConfig& cfg);

inline constexpr int kDefaultPortraitKicks = 150;
inline constexpr int kDefaultSeriesKicks = 600;
inline constexpr int kDefaultScanKicks = 600;
inline constexpr int kDefaultOpenKicks = 200;

}  // namespace qkt::harness
