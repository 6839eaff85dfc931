// qkt: kicked-top experiment harness.
//
// Exit codes: 0 success, 1 verification failure or unexpected error,
// 2 configuration error, 3 numerical-invariant violation.

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "harness/commands.hpp"

namespace {

using namespace qkt::harness;

struct Flags {
  std::string config;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<int> jobs;
  std::optional<double> kappa, p, theta, phi, gamma_s, beta;
  std::optional<int> kicks, points, snapshot_kick;
  std::optional<std::uint64_t> seed;
  bool husimi_all = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file (flags override its values)");
  cmd->add_option("--preset", f.preset, "regular-k3 | chaotic-k3 | regular-k1 | rotation");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--jobs", f.jobs, "worker threads (default: all cores)");
  cmd->add_option("--kappa", f.kappa, "twist strength");
  cmd->add_option("--p", f.p, "kick angle (radians)");
  cmd->add_option("--theta", f.theta, "initial coherent-state polar angle");
  cmd->add_option("--phi", f.phi, "initial coherent-state azimuth");
  cmd->add_option("--kicks", f.kicks, "number of kicks");
  cmd->add_option("--gamma-s", f.gamma_s, "photon scattering rate (per kick period)");
  cmd->add_option("--beta", f.beta, "coherence figure of merit; gamma_s = kappa / (2 j beta)");
  cmd->add_option("--seed", f.seed, "seed for randomized initial-condition layouts");
}

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = load_config_file(f.config, cfg);
  if (f.preset) apply_preset(cfg, *f.preset);
  if (f.out) cfg.out = *f.out;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.kappa) {
    cfg.kappa = *f.kappa;
    cfg.kappa_given = true;
  }
  if (f.p) cfg.p = *f.p;
  if (f.theta) cfg.theta = *f.theta;
  if (f.phi) cfg.phi = *f.phi;
  if (f.theta || f.phi) cfg.ic_given = true;
  if (f.kicks) cfg.kicks = *f.kicks;
  if (f.gamma_s) cfg.gamma_s = *f.gamma_s;
  if (f.beta) cfg.beta = *f.beta;
  if (f.seed) cfg.seed = *f.seed;
  if (f.snapshot_kick) cfg.snapshot_kick = *f.snapshot_kick;
  if (f.husimi_all) cfg.husimi_all = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum kicked top: classical map, Floquet dynamics, entanglement and decoherence"};
  app.require_subcommand(1);

  Flags flags;
  std::function<CommandResult(const ExperimentConfig&)> action;
  std::optional<std::string> verify_dir;

  const auto add = [&](const std::string& name, const std::string& help,
                       CommandResult (*fn)(const ExperimentConfig&)) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, flags);
    cmd->callback([&action, fn] { action = fn; });
    return cmd;
  };

  add("portrait", "stroboscopic classical phase portraits (ic_index,kick,theta,phi)", cmd_phase_portrait);
  add("series", "closed-system entropy/negativity series (kick,S,N)", cmd_entanglement_series);
  add("scan-phi", "time-averaged entanglement and support along theta = const", cmd_scan_phi)
      ->add_option("--points", flags.points, "number of phi samples");
  add("scan-kappa", "time-averaged entanglement versus kappa", cmd_scan_kappa)
      ->add_option("--points", flags.points, "number of kappa samples");
  add("spectrum", "Floquet spectrum, overlaps (n,omega,f) and Husimi grids", cmd_spectrum)
      ->add_flag("--husimi-all", flags.husimi_all, "write a Husimi grid for every eigenstate");
  add("open", "decohering evolution (kick,S,N,purity)", cmd_open_system)
      ->add_option("--snapshot-kick", flags.snapshot_kick, "also write the Husimi grid of rho at this kick");
  auto* verify = app.add_subcommand("verify", "re-check manifest.json checksums in an output directory");
  verify->add_option("--out", flags.out, "output directory")->required();
  verify->callback([&] { verify_dir = flags.out; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify_dir) {
      const auto report = verify_manifest(*verify_dir);
      for (const auto& name : report.ok) std::cout << "ok       " << name << '\n';
      for (const auto& problem : report.problems) std::cout << "FAILED   " << problem << '\n';
      return report.passed() ? 0 : 1;
    }
    ExperimentConfig cfg = resolve(flags);
    if (flags.points) {
      if (app.got_subcommand("scan-phi")) cfg.phi_points = *flags.points;
      if (app.got_subcommand("scan-kappa")) cfg.kappa_points = *flags.points;
    }
    const auto result = action(cfg);
    for (const auto& f : result.files) std::cout << cfg.out << '/' << f.name << "  " << f.sha256 << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qkt::InvariantViolation& e) {
    std::cerr << "numerical invariant violated: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
