#include "harness/experiments.hpp"

#include <algorithm>

namespace qkt::harness {

std::vector<SeriesRow> entanglement_series(const TopParams& top, SphericalCoord ic, int n_kicks) {
  const auto ops = build_operators(top.spin);
  const auto floquet = floquet_operator(top, ops);
  const auto states = evolve(coherent_state(ops, ic), floquet, n_kicks);
  std::vector<SeriesRow> rows;
  rows.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    rows.push_back({static_cast<int>(k), linear_entropy(mean_spin(states[k], ops), top.spin),
                    negativity(states[k], top.spin)});
  }
  return rows;
}

Averages averaged_entanglement(const AngularMomentumOps& ops, const FloquetOperator& floquet, SphericalCoord ic,
                               int n_kicks) {
  const auto states = evolve(coherent_state(ops, ic), floquet, n_kicks);
  std::vector<double> s, n;
  for (std::size_t k = 1; k < states.size(); ++k) {
    s.push_back(linear_entropy(mean_spin(states[k], ops), ops.spin));
    n.push_back(negativity(states[k], ops.spin));
  }
  return {time_average(s), time_average(n)};
}

std::vector<PhiScanRow> phi_scan(const TopParams& top, double theta, int points, int n_kicks, int jobs) {
  const auto ops = build_operators(top.spin);
  const auto floquet = floquet_operator(top, ops);
  const auto spectrum = floquet_spectrum(floquet);
  return parallel_map(points, jobs, [&](int k) {
    const SphericalCoord ic{theta, kTwoPi * k / points};
    const auto avg = averaged_entanglement(ops, floquet, ic, n_kicks);
    return PhiScanRow{ic.phi, avg.entropy, avg.negativity, support_measure(coherent_state(ops, ic), spectrum).normalized};
  });
}

std::vector<KappaScanRow> kappa_scan(const TopParams& base, SphericalCoord ic, double kappa_min, double kappa_max,
                                     int points, int n_kicks, int jobs) {
  const auto ops = build_operators(base.spin);
  return parallel_map(points, jobs, [&](int k) {
    TopParams top = base;
    top.kappa = points == 1 ? kappa_min : kappa_min + (kappa_max - kappa_min) * k / (points - 1);
    const auto avg = averaged_entanglement(ops, floquet_operator(top, ops), ic, n_kicks);
    return KappaScanRow{top.kappa, avg.entropy, avg.negativity};
  });
}

SpectrumAnalysis spectrum_analysis(const TopParams& top, SphericalCoord ic) {
  const auto ops = build_operators(top.spin);
  SpectrumAnalysis out{floquet_spectrum(floquet_operator(top, ops)), {}, 0};
  out.overlaps = overlap_distribution(coherent_state(ops, ic), out.spectrum);
  const auto best = std::max_element(out.overlaps.begin(), out.overlaps.end(),
                                     [](const Overlap& a, const Overlap& b) { return a.f < b.f; });
  out.dominant = static_cast<int>(best - out.overlaps.begin());
  return out;
}

OpenRun open_run(const TopParams& top, const DecoherenceParams& dec, SphericalCoord ic, int n_kicks) {
  const auto ops = build_operators(top.spin);
  OpenRun run;
  run.states = open_kicked_top(DensityMatrix::pure(coherent_state(ops, ic)), top, dec, n_kicks, &run.diagnostics);
  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const auto& rho = run.states[k];
    run.rows.push_back({static_cast<int>(k), linear_entropy(mean_spin(rho.matrix(), ops), top.spin),
                        negativity(rho, top.spin), purity(rho)});
  }
  return run;
}

}  // namespace qkt::harness
