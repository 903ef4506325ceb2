#pragma once

#include "skelscore/barcode.hpp"

namespace skelscore {

/// Chebyshev distance between two persistence intervals:
/// max(|birth difference|, |death difference|).
double interval_distance(const PersistenceBar& a, const PersistenceBar& b);

/// Cost of matching a bar to its diagonal projection: persistence / 2.
double diagonal_cost(const PersistenceBar& bar);

/// Bottleneck distance between two barcodes under diagonal augmentation:
/// the infimum over augmented bijections of the maximum per-pair interval
/// distance. Two empty barcodes give 0. Expects finite bars (essential bars
/// already capped).
double bottleneck_distance(const PersistenceBarcode& a, const PersistenceBarcode& b);

/// Normalized p-Wasserstein distance: the p-th root of the minimum total
/// interval-distance^p matching cost under diagonal augmentation, divided
/// by max(|a|, |b|). Two empty barcodes give 0. Requires p >= 1.
double wasserstein_distance(const PersistenceBarcode& a, const PersistenceBarcode& b, int p = 1);

}  // namespace skelscore
