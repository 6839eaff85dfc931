#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkt/classical_top.hpp"
#include "qkt/open_system.hpp"

namespace qkt::harness {

// Bad user input: unknown keys, out-of-range values, conflicting options.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat run configuration. Unset optionals fall back to per-command defaults.
struct ExperimentConfig {
  std::optional<std::string> preset;
  double j = 4.0;
  double kappa = 3.0;
  bool kappa_given = false;
  double p = kPi / 2;
  double theta = 2.25;
  double phi = 2.5;
  bool ic_given = false;  // theta/phi set explicitly (not just defaulted)
  std::optional<int> kicks;
  std::optional<double> gamma_s;
  std::optional<double> beta;

  int phi_points = 200;
  int kappa_points = 140;
  double kappa_min = 0.0;
  double kappa_max = 7.0;

  std::vector<double> portrait_kappas{1.0, 3.0};
  bool portrait_kappas_given = false;
  int portrait_grid = 12;
  std::string ic_layout = "grid";  // "grid" | "random"
  int ic_count = 144;              // used by the random layout
  std::uint64_t seed = 0;

  int husimi_theta_points = 101;
  int husimi_phi_points = 201;
  bool husimi_all = false;
  std::optional<int> snapshot_kick;

  std::string out = "out";
  int jobs = 0;  // 0 = hardware concurrency

  TopParams top() const;
  SphericalCoord initial_condition() const { return {theta, phi}; }
  int kicks_or(int fallback) const { return kicks.value_or(fallback); }
  int resolved_jobs() const;
  /// Resolved decoherence parameters; beta = 8.2 when neither input is given.
  DecoherenceParams decoherence() const;

  /// Throws ConfigError for any violated invariant.
  void validate() const;
  nlohmann::json to_json() const;
};

struct Preset {
  std::string name;
  double kappa;
  double theta;
  double phi;
};

const std::vector<Preset>& presets();
void apply_preset(ExperimentConfig& cfg, const std::string& name);

/// Merges the keys of a flat JSON object into `cfg`. Unknown keys, wrong
/// types and a "preset" key are handled here (the preset is applied first).
void merge_json(ExperimentConfig& cfg, const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

}  // namespace qkt::harness
