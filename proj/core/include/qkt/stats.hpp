#pragma once

#include <span>
#include <vector>

namespace qkt {

/// Ranks starting at 1, ties receive their average rank.
std::vector<double> ranks(std::span<const double> values);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of the ranks. Throws for mismatched or short inputs.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

/// One-sided periodogram |X_k|^2 of the mean-subtracted series for
/// k = 1 .. n/2 (the DC bin is dropped, so the entries sum to the AC power).
std::vector<double> ac_power_spectrum(std::span<const double> series);

/// Fraction of the total AC power held by the `k` strongest bins.
double top_bins_power_fraction(std::span<const double> power, std::size_t k);

}  // namespace qkt
