#pragma once

// Scalar Function Topology Divergence: sums of p-th powers of the finite bar
// lengths of the F-Cross-Barcode, per degree, and its subgradient.

#include <map>
#include <span>
#include <vector>

#include "sftd/cross_barcode.hpp"
#include "sftd/types.hpp"

namespace sftd {

struct SftdConfig {
  std::vector<int> degrees{0};
  double p = 1.0;
  /// Average SFTD(f, g) and SFTD(g, f).
  bool symmetric = false;

  /// Throws std::invalid_argument on an empty or negative degree set or p < 1.
  void validate() const;
  int max_degree() const;
};

struct SftdValue {
  std::map<int, double> per_degree;
  double total = 0.0;
};

struct SftdGradient {
  SftdValue value;
  SparseGradient gradient;
};

/// Sum over finite bars of degree k of (death - birth)^p.
double bar_power_sum(std::span<const Bar> bars, int k, double p);

SftdValue sftd(const ScalarField& f, const ScalarField& g, const SftdConfig& config);
SftdValue sftd(const GraphField& f, const GraphField& g, const SftdConfig& config);

/// Each finite bar (b, d) contributes p (d - b)^(p-1) at the input value its
/// death cell copies and minus that at the value its birth cell copies.
SftdGradient sftd_gradient(const ScalarField& f, const ScalarField& g, const SftdConfig& config);
SftdGradient sftd_gradient(const GraphField& f, const GraphField& g, const SftdConfig& config);

}  // namespace sftd
