#include "harness/commands.hpp"

#include <random>

#include "harness/experiments.hpp"
#include "qkt/classical_top.hpp"

namespace qkt::harness {

namespace {

CommandResult finish(OutputSet& out, const std::string& command, const ExperimentConfig& cfg,
                     const std::string& started, const nlohmann::json& extra = nlohmann::json::object()) {
  out.write_manifest(command, cfg.to_json(), started, extra);
  return {out.files()};
}

CsvTable husimi_table(const HusimiGrid& grid) {
  CsvTable table({"theta", "phi", "p"});
  for (std::size_t i = 0; i < grid.thetas.size(); ++i) {
    for (std::size_t k = 0; k < grid.phis.size(); ++k) table.add_row({grid.thetas[i], grid.phis[k], grid.at(i, k)});
  }
  return table;
}

}  // namespace

std::vector<SphericalCoord> portrait_initial_conditions(const ExperimentConfig& cfg) {
  if (cfg.ic_given) return {cfg.initial_condition()};
  if (cfg.ic_layout == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SphericalCoord> ics;
    for (int i = 0; i < cfg.ic_count; ++i) ics.push_back({std::acos(1.0 - 2.0 * u(rng)), kTwoPi * u(rng)});
    return ics;
  }
  return uniform_sphere_grid(cfg.portrait_grid, cfg.portrait_grid);
}

std::vector<double> portrait_kappas(const ExperimentConfig& cfg) {
  if (cfg.portrait_kappas_given) return cfg.portrait_kappas;
  if (cfg.kappa_given) return {cfg.kappa};
  return cfg.portrait_kappas;
}

CommandResult cmd_phase_portrait(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  const auto ics = portrait_initial_conditions(cfg);
  const int kicks = cfg.kicks_or(kDefaultPortraitKicks);
  const auto kappas = portrait_kappas(cfg);
  const auto tables = parallel_map(static_cast<int>(kappas.size()), cfg.resolved_jobs(), [&](int i) {
    TopParams top = cfg.top();
    top.kappa = kappas[static_cast<std::size_t>(i)];
    CsvTable table({"ic_index", "kick", "theta", "phi"});
    for (const auto& r : phase_portrait(ics, top, kicks)) table.add_row({r.ic_index, r.kick}, {r.theta, r.phi});
    return table;
  });
  OutputSet out(cfg.out);
  for (std::size_t i = 0; i < kappas.size(); ++i) out.write("portrait_k" + format_number(kappas[i]) + ".csv", tables[i]);
  return finish(out, "portrait", cfg, started);
}

CommandResult cmd_entanglement_series(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  CsvTable table({"kick", "S", "N"});
  for (const auto& r : entanglement_series(cfg.top(), cfg.initial_condition(), cfg.kicks_or(kDefaultSeriesKicks))) {
    table.add_row({r.kick}, {r.entropy, r.negativity});
  }
  OutputSet out(cfg.out);
  out.write("series.csv", table);
  return finish(out, "series", cfg, started);
}

CommandResult cmd_scan_phi(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  CsvTable table({"phi", "S_avg", "N_avg", "s_support"});
  for (const auto& r :
       phi_scan(cfg.top(), cfg.theta, cfg.phi_points, cfg.kicks_or(kDefaultScanKicks), cfg.resolved_jobs())) {
    table.add_row({r.phi, r.entropy_avg, r.negativity_avg, r.support});
  }
  OutputSet out(cfg.out);
  out.write("scan_phi.csv", table);
  return finish(out, "scan-phi", cfg, started);
}

CommandResult cmd_scan_kappa(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  CsvTable table({"kappa", "S_avg", "N_avg"});
  for (const auto& r : kappa_scan(cfg.top(), cfg.initial_condition(), cfg.kappa_min, cfg.kappa_max, cfg.kappa_points,
                                  cfg.kicks_or(kDefaultScanKicks), cfg.resolved_jobs())) {
    table.add_row({r.kappa, r.entropy_avg, r.negativity_avg});
  }
  OutputSet out(cfg.out);
  out.write("scan_kappa.csv", table);
  return finish(out, "scan-kappa", cfg, started);
}

CommandResult cmd_spectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  const TopParams top = cfg.top();
  const auto analysis = spectrum_analysis(top, cfg.initial_condition());

  CsvTable table({"n", "omega", "f"});
  for (std::size_t n = 0; n < analysis.overlaps.size(); ++n) {
    table.add_row({static_cast<long long>(n)}, {analysis.overlaps[n].omega, analysis.overlaps[n].f});
  }

  const auto ops = build_operators(top.spin);
  std::vector<int> which;
  if (cfg.husimi_all) {
    for (int n = 0; n < analysis.spectrum.size(); ++n) which.push_back(n);
  } else {
    which.push_back(analysis.dominant);
  }
  const auto grids = parallel_map(static_cast<int>(which.size()), cfg.resolved_jobs(), [&](int i) {
    return husimi(SpinState(analysis.spectrum.vectors.col(which[static_cast<std::size_t>(i)])), ops,
                  cfg.husimi_theta_points, cfg.husimi_phi_points);
  });

  OutputSet out(cfg.out);
  out.write("spectrum.csv", table);
  nlohmann::json integrals = nlohmann::json::object();
  for (std::size_t i = 0; i < which.size(); ++i) {
    const std::string name = "husimi_n" + std::to_string(which[i]) + ".csv";
    out.write(name, husimi_table(grids[i]));
    integrals[name] = grids[i].integral();
  }
  return finish(out, "spectrum", cfg, started,
                {{"dominant_eigenstate", analysis.dominant},
                 {"participation_ratio", participation_ratio(analysis.overlaps)},
                 {"husimi_integrals", integrals}});
}

CommandResult cmd_open_system(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  const int kicks = cfg.kicks_or(kDefaultOpenKicks);
  if (cfg.snapshot_kick && *cfg.snapshot_kick > kicks) {
    throw ConfigError("snapshot_kick exceeds the number of kicks");
  }
  const TopParams top = cfg.top();
  const DecoherenceParams dec = cfg.decoherence();
  const auto run = open_run(top, dec, cfg.initial_condition(), kicks);

  CsvTable table({"kick", "S", "N", "purity"});
  for (const auto& r : run.rows) table.add_row({r.kick}, {r.entropy, r.negativity, r.purity});
  OutputSet out(cfg.out);
  out.write("open.csv", table);
  if (cfg.snapshot_kick) {
    const auto ops = build_operators(top.spin);
    const auto grid = husimi(run.states[static_cast<std::size_t>(*cfg.snapshot_kick)], ops, cfg.husimi_theta_points,
                             cfg.husimi_phi_points);
    out.write("husimi_kick" + std::to_string(*cfg.snapshot_kick) + ".csv", husimi_table(grid));
  }
  return finish(out, "open", cfg, started,
                {{"gamma_s", dec.gamma_s},
                 {"max_trace_drift", run.diagnostics.max_trace_drift},
                 {"max_hermiticity_deviation", run.diagnostics.max_hermiticity_deviation}});
}

}  // namespace qkt::harness
