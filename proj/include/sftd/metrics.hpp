#pragma once

// Distances between persistence diagrams under the L-infinity ground metric.
// A point may be matched to its projection on the diagonal at cost
// (death - birth) / 2.

#include <span>
#include <utility>
#include <vector>

#include "sftd/types.hpp"

namespace sftd {

struct Diagram {
  std::vector<std::pair<double, double>> points;  // (birth, death), death finite

  /// Finite bars of one degree; essential bars are never included.
  static Diagram from_barcode(const Barcode& barcode, int dim);
  static Diagram from_bars(std::span<const Bar> bars, int dim);
};

/// Exact bottleneck distance: binary search over the candidate radii with a
/// bipartite perfect-matching feasibility test.
double bottleneck_distance(const Diagram& a, const Diagram& b);

/// Exact q-Wasserstein distance via the Hungarian algorithm on the
/// diagonal-augmented assignment problem. Throws std::invalid_argument if q < 1.
double wasserstein_distance(const Diagram& a, const Diagram& b, double q);

}  // namespace sftd
