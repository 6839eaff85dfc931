#include "harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

namespace qkt::harness {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"regular-k3", 3.0, 2.25, 2.5},
      {"chaotic-k3", 3.0, 2.25, 1.1},
      {"regular-k1", 1.0, 2.25, 1.1},
      {"rotation", 0.0, 2.25, 2.5},
  };
  return table;
}

void apply_preset(ExperimentConfig& cfg, const std::string& name) {
  const auto& table = presets();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Preset& p) { return p.name == name; });
  if (it == table.end()) {
    std::string known;
    for (const auto& p : table) known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  cfg.preset = name;
  cfg.kappa = it->kappa;
  cfg.theta = it->theta;
  cfg.phi = it->phi;
  cfg.kappa_given = true;
  cfg.p = kPi / 2;
  cfg.j = 4.0;
}

TopParams ExperimentConfig::top() const {
  TopParams t;
  try {
    t.spin = SpinQuantum::from_j(j);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  t.kappa = kappa;
  t.p = p;
  return t;
}

int ExperimentConfig::resolved_jobs() const {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

DecoherenceParams ExperimentConfig::decoherence() const {
  if (gamma_s && beta) throw ConfigError("gamma_s and beta are mutually exclusive");
  if (gamma_s) {
    DecoherenceParams d;
    d.gamma_s = *gamma_s;
    return d;
  }
  try {
    return DecoherenceParams::from_beta(top(), beta.value_or(kCesiumBeta));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate() const {
  const auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  (void)top();
  need(std::abs(std::round(2 * j) - 2 * j) < 1e-12 && j >= 0.5, "j must be a positive half-integer");
  need(std::isfinite(kappa) && kappa >= 0.0, "kappa must be >= 0");
  need(std::isfinite(p), "p must be finite");
  need(std::isfinite(theta) && theta >= 0.0 && theta <= kPi, "theta must lie in [0, pi]");
  need(std::isfinite(phi), "phi must be finite");
  need(!kicks || *kicks >= 1, "kicks must be >= 1");
  need(!(gamma_s && beta), "gamma_s and beta are mutually exclusive");
  need(!gamma_s || (std::isfinite(*gamma_s) && *gamma_s >= 0.0), "gamma_s must be >= 0");
  need(!beta || (std::isfinite(*beta) && *beta > 0.0), "beta must be > 0");
  need(phi_points >= 1, "phi_points must be >= 1 (empty sweep)");
  need(kappa_points >= 1, "kappa_points must be >= 1 (empty sweep)");
  need(kappa_min >= 0.0 && kappa_max >= kappa_min, "kappa range must satisfy 0 <= kappa_min <= kappa_max");
  need(!portrait_kappas.empty(), "portrait_kappas must not be empty");
  for (double k : portrait_kappas) need(std::isfinite(k) && k >= 0.0, "portrait kappas must be >= 0");
  need(portrait_grid >= 1, "grid must be >= 1");
  need(ic_layout == "grid" || ic_layout == "random", "ic_layout must be 'grid' or 'random'");
  need(ic_count >= 1, "ic_count must be >= 1");
  need(husimi_theta_points >= 2 && husimi_phi_points >= 2, "Husimi grid needs at least 2 x 2 points");
  need(!snapshot_kick || *snapshot_kick >= 0, "snapshot_kick must be >= 0");
  need(jobs >= 0, "jobs must be >= 0");
  need(!out.empty(), "output directory must not be empty");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j_out{
      {"j", j},
      {"kappa", kappa},
      {"p", p},
      {"theta", theta},
      {"phi", phi},
      {"phi_points", phi_points},
      {"kappa_points", kappa_points},
      {"kappa_min", kappa_min},
      {"kappa_max", kappa_max},
      {"portrait_kappas", portrait_kappas},
      {"grid", portrait_grid},
      {"ic_layout", ic_layout},
      {"ic_count", ic_count},
      {"seed", seed},
      {"husimi_theta_points", husimi_theta_points},
      {"husimi_phi_points", husimi_phi_points},
      {"husimi_all", husimi_all},
  };
  j_out["preset"] = preset ? nlohmann::json(*preset) : nlohmann::json(nullptr);
  j_out["kicks"] = kicks ? nlohmann::json(*kicks) : nlohmann::json(nullptr);
  j_out["gamma_s"] = gamma_s ? nlohmann::json(*gamma_s) : nlohmann::json(nullptr);
  j_out["beta"] = beta ? nlohmann::json(*beta) : nlohmann::json(nullptr);
  j_out["snapshot_kick"] = snapshot_kick ? nlohmann::json(*snapshot_kick) : nlohmann::json(nullptr);
  return j_out;
}

void merge_json(ExperimentConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "preset", "j", "kappa", "p", "theta", "phi", "kicks", "gamma_s", "beta", "phi_points", "kappa_points",
      "kappa_min", "kappa_max", "portrait_kappas", "grid", "ic_layout", "ic_count", "seed",
      "husimi_theta_points", "husimi_phi_points", "husimi_all", "snapshot_kick", "out", "jobs"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  try {
    if (doc.contains("preset") && !doc["preset"].is_null()) apply_preset(cfg, doc["preset"].get<std::string>());
    const auto num = [&](const char* key, auto& target) {
      if (doc.contains(key) && !doc[key].is_null()) target = doc[key].get<std::decay_t<decltype(target)>>();
    };
    const auto opt = [&](const char* key, auto& target) {
      if (doc.contains(key) && !doc[key].is_null()) target = doc[key].get<typename std::decay_t<decltype(target)>::value_type>();
    };
    num("j", cfg.j);
    if (doc.contains("kappa")) cfg.kappa_given = true;
    num("kappa", cfg.kappa);
    num("p", cfg.p);
    if (doc.contains("theta") || doc.contains("phi")) cfg.ic_given = true;
    num("theta", cfg.theta);
    num("phi", cfg.phi);
    opt("kicks", cfg.kicks);
    opt("gamma_s", cfg.gamma_s);
    opt("beta", cfg.beta);
    num("phi_points", cfg.phi_points);
    num("kappa_points", cfg.kappa_points);
    num("kappa_min", cfg.kappa_min);
    num("kappa_max", cfg.kappa_max);
    if (doc.contains("portrait_kappas")) {
      cfg.portrait_kappas = doc["portrait_kappas"].get<std::vector<double>>();
      cfg.portrait_kappas_given = true;
    }
    num("grid", cfg.portrait_grid);
    num("ic_layout", cfg.ic_layout);
    num("ic_count", cfg.ic_count);
    num("seed", cfg.seed);
    num("husimi_theta_points", cfg.husimi_theta_points);
    num("husimi_phi_points", cfg.husimi_phi_points);
    num("husimi_all", cfg.husimi_all);
    opt("snapshot_kick", cfg.snapshot_kick);
    num("out", cfg.out);
    num("jobs", cfg.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  merge_json(base, doc);
  return base;
}

}  // namespace qkt::harness
