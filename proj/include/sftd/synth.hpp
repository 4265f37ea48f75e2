#pragma once

// Deterministic generators for synthetic comparison experiments and the
// graph Laplacian spectrum.

#include <cstdint>
#include <random>
#include <vector>

#include "sftd/types.hpp"

namespace sftd::synth {

/// 64-bit Mersenne Twister (std::mt19937_64, fully specified by the standard)
/// with explicit conversions, so streams are identical on every platform.
/// `split(k)` derives an independent generator for stream k.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, bound), by rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound);
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// f(x) = -depth * sum_c exp(-|x - c|^2 / (2 sigma^2)) on integer lattice
/// coordinates.
ScalarField gaussian_minima_field(const std::vector<std::size_t>& shape,
                                  const std::vector<std::vector<double>>& centers, double depth,
                                  double sigma);

/// 2D lattice of walls at -1 on a background of 0. Cells are (cell-1)x(cell-1)
/// interiors between walls on every multiple of `cell`; the grid has
/// rows*cell+1 by cols*cell+1 points. Each defect (row, col) opens the wall
/// segment on that cell's east side (west side for the last column).
ScalarField lattice_defect_field(std::size_t rows, std::size_t cols, std::size_t cell,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& defects);

enum class BridgePosition { above, below };

/// grid^3 samples of the unit cube centered at the origin. -1 within
/// shell_width of the sphere of radius r_inner or r_outer, or inside the
/// bridge cylinder along axis 0 joining them on the chosen side; 0 elsewhere.
ScalarField spheres_bridge_field(std::size_t grid, double r_inner, double r_outer, double shell_width,
                                 BridgePosition bridge);

/// Ring lattice where every vertex joins its k_ring/2 clockwise neighbors;
/// each such edge is then rewired with probability beta to a uniformly chosen
/// vertex that is neither the source nor already adjacent. Values are zero.
GraphField watts_strogatz(std::size_t n, std::size_t k_ring, double beta, Rng& rng);

struct Eigenpair {
  double value;
  std::vector<double> vector;
};

/// Eigenpairs of D^-1/2 (D - A) D^-1/2 by cyclic Jacobi rotations, ascending.
/// Vectors have unit length and a positive largest-magnitude entry.
std::vector<Eigenpair> laplacian_eigenvectors(const GraphField& graph);

}  // namespace sftd::synth
