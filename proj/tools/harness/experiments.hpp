#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "qkt/entanglement.hpp"
#include "qkt/open_system.hpp"
#include "qkt/quantum_top.hpp"

namespace qkt::harness {

/// Evaluates fn(0..n-1) on up to `jobs` threads. Results come back in index
/// order whatever the completion order; the first exception is rethrown.
template <typename Fn>
auto parallel_map(int n, int jobs, Fn fn) -> std::vector<decltype(fn(0))> {
  using Result = decltype(fn(0));
  std::vector<std::optional<Result>> slots(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::vector<Result> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

struct SeriesRow {
  int kick;
  double entropy;
  double negativity;
};

/// Closed-system S and N for kicks 0..n_kicks.
std::vector<SeriesRow> entanglement_series(const TopParams& top, SphericalCoord ic, int n_kicks);

struct Averages {
  double entropy;
  double negativity;
};

/// Means of S and N over kicks 1..n_kicks (the initial separable state is excluded).
Averages averaged_entanglement(const AngularMomentumOps& ops, const FloquetOperator& floquet, SphericalCoord ic,
                               int n_kicks);

struct PhiScanRow {
  double phi;
  double entropy_avg;
  double negativity_avg;
  double support;  // s / s0
};

/// phi_k = 2 pi k / points along the line theta = const.
std::vector<PhiScanRow> phi_scan(const TopParams& top, double theta, int points, int n_kicks, int jobs);

struct KappaScanRow {
  double kappa;
  double entropy_avg;
  double negativity_avg;
};

/// kappa_k evenly spaced on [kappa_min, kappa_max] including both ends.
std::vector<KappaScanRow> kappa_scan(const TopParams& base, SphericalCoord ic, double kappa_min, double kappa_max,
                                     int points, int n_kicks, int jobs);

struct SpectrumAnalysis {
  FloquetSpectrum spectrum;
  std::vector<Overlap> overlaps;
  int dominant;  // index of the largest overlap
};

SpectrumAnalysis spectrum_analysis(const TopParams& top, SphericalCoord ic);

struct OpenRow {
  int kick;
  double entropy;
  double negativity;
  double purity;
};

struct OpenRun {
  std::vector<OpenRow> rows;
  std::vector<DensityMatrix> states;
  PropagationDiagnostics diagnostics;
};

OpenRun open_run(const TopParams& top, const DecoherenceParams& dec, SphericalCoord ic, int n_kicks);

}  // namespace qkt::harness
