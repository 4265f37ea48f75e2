#include "sftd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "sftd/kernels.hpp"

namespace sftd::synth {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

Rng Rng::split(std::uint64_t stream) const {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

ScalarField gaussian_minima_field(const std::vector<std::size_t>& shape,
                                  const std::vector<std::vector<double>>& centers, double depth,
                                  double sigma) {
  if (!(depth > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("depth and sigma must be positive");
  for (const auto& c : centers) {
    if (c.size() != shape.size()) throw std::invalid_argument("center has the wrong number of coordinates");
    for (std::size_t axis = 0; axis < shape.size(); ++axis)
      if (!(c[axis] >= 0.0) || !(c[axis] <= static_cast<double>(shape[axis]) - 1.0))
        throw std::invalid_argument("center out of bounds");
  }
  std::size_t count = 1;
  for (auto d : shape) count *= d;
  ScalarField probe(shape, std::vector<double>(count, 0.0));
  std::vector<double> values(count, 0.0);
  const double denom = 2.0 * sigma * sigma;
  for (std::size_t i = 0; i < count; ++i) {
    const auto x = probe.unravel(i);
    double sum = 0.0;
    for (const auto& c : centers) {
      double r2 = 0.0;
      for (std::size_t axis = 0; axis < x.size(); ++axis) {
        const double dx = static_cast<double>(x[axis]) - c[axis];
        r2 += dx * dx;
      }
      sum += std::exp(-r2 / denom);
    }
    values[i] = centers.empty() ? 0.0 : -depth * sum;
  }
  return ScalarField(shape, std::move(values));
}

ScalarField lattice_defect_field(std::size_t rows, std::size_t cols, std::size_t cell,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& defects) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("lattice needs at least one cell");
  if (cell < 2) throw std::invalid_argument("cell pitch must be at least 2");
  const std::size_t h = rows * cell + 1;
  const std::size_t w = cols * cell + 1;
  std::vector<double> values(h * w, 0.0);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      if (y % cell == 0 || x % cell == 0) values[y * w + x] = -1.0;
  for (const auto& [r, c] : defects) {
    if (r >= rows || c >= cols)
      throw std::invalid_argument("defect cell (" + std::to_string(r) + ", " + std::to_string(c) +
                                  ") outside the lattice");
    if (cols == 1) throw std::invalid_argument("a single-column lattice has no interior wall to open");
    const std::size_t x = c + 1 < cols ? (c + 1) * cell : c * cell;
    for (std::size_t y = r * cell + 1; y < (r + 1) * cell; ++y) values[y * w + x] = 0.0;
  }
  return ScalarField({h, w}, std::move(values));
}

ScalarField spheres_bridge_field(std::size_t grid, double r_inner, double r_outer, double shell_width,
                                 BridgePosition bridge) {
  if (grid < 8) throw std::invalid_argument("grid must be at least 8");
  if (!(r_inner > 0.0) || !(r_inner < r_outer) || !(r_outer < 0.5))
    throw std::invalid_argument("radii must satisfy 0 < r_inner < r_outer < 0.5");
  if (!(shell_width > 0.0)) throw std::invalid_argument("shell width must be positive");

  // Integer numerators keep the sample grid exactly symmetric about 0.
  const auto span = static_cast<double>(2 * (grid - 1));
  std::vector<double> coord(grid);
  for (std::size_t i = 0; i < grid; ++i)
    coord[i] = (2.0 * static_cast<double>(i) - static_cast<double>(grid - 1)) / span;

  const double sign = bridge == BridgePosition::above ? 1.0 : -1.0;
  std::vector<double> values(grid * grid * grid, 0.0);
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j)
      for (std::size_t k = 0; k < grid; ++k) {
        const double x = coord[i], y = coord[j], z = coord[k];
        const double r = std::sqrt(x * x + y * y + z * z);
        const bool shell = std::abs(r - r_inner) <= shell_width || std::abs(r - r_outer) <= shell_width;
        const double along = sign * x;
        const bool in_bridge =
            along >= r_inner && along <= r_outer && std::sqrt(y * y + z * z) <= shell_width;
        if (shell || in_bridge) values[(i * grid + j) * grid + k] = -1.0;
      }
  return ScalarField({grid, grid, grid}, std::move(values));
}

GraphField watts_strogatz(std::size_t n, std::size_t k_ring, double beta, Rng& rng) {
  if (k_ring % 2 != 0) throw std::invalid_argument("k_ring must be even");
  if (k_ring >= n) throw std::invalid_argument("k_ring must be smaller than n");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");

  std::vector<std::set<std::size_t>> adj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= k_ring / 2; ++j) {
      const std::size_t v = (u + j) % n;
      adj[u].insert(v);
      adj[v].insert(u);
    }
  for (std::size_t j = 1; j <= k_ring / 2; ++j)
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t v = (u + j) % n;
      if (!(rng.uniform() < beta)) continue;
      if (adj[u].size() >= n - 1) continue;
      std::size_t w;
      do {
        w = static_cast<std::size_t>(rng.below(n));
      } while (w == u || adj[u].count(w) != 0);
      adj[u].erase(v);
      adj[v].erase(u);
      adj[u].insert(w);
      adj[w].insert(u);
    }

  std::vector<std::pair<Index, Index>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : adj[u])
      if (u < v) edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
  return GraphField(n, std::move(edges), std::vector<double>(n, 0.0));
}

std::vector<Eigenpair> laplacian_eigenvectors(const GraphField& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> degree(n, 0.0);
  for (const auto& [u, v] : graph.edges()) {
    degree[static_cast<std::size_t>(u)] += 1.0;
    degree[static_cast<std::size_t>(v)] += 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] == 0.0) throw std::invalid_argument("vertex " + std::to_string(i) + " is isolated");

  std::vector<double> a(n * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) at(i, i) = 1.0;
  for (const auto& [u, v] : graph.edges()) {
    const auto i = static_cast<std::size_t>(u), j = static_cast<std::size_t>(v);
    at(i, j) = at(j, i) = -1.0 / std::sqrt(degree[i] * degree[j]);
  }

  // Rows of q are the eigenvectors.
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
  auto row = [n](std::vector<double>& m, std::size_t i) { return std::span<double>(m).subspan(i * n, n); };

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-10; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apq = at(p, r);
        if (apq == 0.0) continue;
        const double app = at(p, p), aqq = at(r, r);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        kernels::rotate_f64(row(a, p), row(a, r), c, s);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          at(k, p) = at(p, k);
          at(k, r) = at(r, k);
        }
        at(p, p) = c * c * app - 2.0 * c * s * apq + s * s * aqq;
        at(r, r) = s * s * app + 2.0 * c * s * apq + c * c * aqq;
        at(p, r) = at(r, p) = 0.0;
        kernels::rotate_f64(row(q, p), row(q, r), c, s);
      }
  }

  std::vector<Eigenpair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = row(q, i);
    std::vector<double> vec(v.begin(), v.end());
    double norm = 0.0;
    for (double x : vec) norm += x * x;
    norm = std::sqrt(norm);
    std::size_t lead = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(vec[k]) > std::abs(vec[lead])) lead = k;
    const double scale = (vec[lead] < 0.0 ? -1.0 : 1.0) / norm;
    for (double& x : vec) x *= scale;
    pairs.push_back({at(i, i), std::move(vec)});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& x, const Eigenpair& y) { return x.value < y.value; });
  return pairs;
}

}  // namespace sftd::synth
