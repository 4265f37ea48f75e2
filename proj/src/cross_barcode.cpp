#include "sftd/cross_barcode.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sftd/cubical_persistence.hpp"
#include "sftd/flag_persistence.hpp"
#include "sftd/kernels.hpp"

namespace sftd {
namespace {

// Argmax of a pair of vertex values, smaller index on ties.
Index argmax_pair(std::span<const double> values, Index a, Index b) {
  if (a > b) std::swap(a, b);
  return values[b] > values[a] ? b : a;
}

std::vector<Bar> finite_of_degree(const Barcode& barcode, int k) { return barcode.finite_in(k); }


}  // namespace

ValueSource global_argmin(std::span<const double> f, std::span<const double> g) {
  const double m = global_min(f, g);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == m) return {Operand::first, static_cast<Index>(i)};
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] == m) return {Operand::second, static_cast<Index>(i)};
  throw std::logic_error("global minimum not found");
}

ValueSource DoubledMatrix::source(std::size_t u, std::size_t v) const {
  const auto fv = f.values();
  const auto gv = g.values();
  if (u > v) std::swap(u, v);
  const auto N = static_cast<Index>(n);
  const auto iu = static_cast<Index>(u);
  const auto iv = static_cast<Index>(v);
  if (matrix(u, v) == kInfinity) throw std::invalid_argument("entry has no finite value");
  if (u == v) {
    if (iu < N) return fv[u] <= gv[u] ? ValueSource{Operand::first, iu} : ValueSource{Operand::second, iu};
    if (iu < 2 * N) return {Operand::first, iu - N};
    return global_argmin(fv, gv);
  }
  if (iv < N) {  // A'-A': min of the two edge filtrations
    const double fmax = std::max(fv[u], fv[v]);
    const double gmax = std::max(gv[u], gv[v]);
    if (fmax <= gmax) return {Operand::first, argmax_pair(fv, iu, iv)};
    return {Operand::second, argmax_pair(gv, iu, iv)};
  }
  if (iu < N && iv < 2 * N) return {Operand::first, argmax_pair(fv, iu, iv - N)};  // A'-A
  if (iv < 2 * N) return {Operand::first, argmax_pair(fv, iu - N, iv - N)};      // A-A
  return {Operand::first, iu - N};                                                 // A-O
}

DoubledMatrix build_doubled_matrix(const GraphField& f, const GraphField& g) {
  if (!f.same_graph(g)) throw std::invalid_argument("f and g are defined on different graphs");
  const std::size_t n = f.vertex_count();
  const std::size_t size = 2 * n + 1;
  const auto F = FiltrationMatrix::lower_star(f);
  const auto G = FiltrationMatrix::lower_star(g);

  std::vector<double> m(size * size, kInfinity);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * size + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      at(i, j) = std::min(F(i, j), G(i, j));
      at(n + i, n + j) = F(i, j);
      // F_+ keeps the diagonal and the upper triangle of F.
      at(n + i, j) = i <= j ? F(i, j) : kInfinity;
      at(j, n + i) = at(n + i, j);
    }
    at(n + i, 2 * n) = f[i];
    at(2 * n, n + i) = f[i];
  }
  at(2 * n, 2 * n) = global_min(f.values(), g.values());
  return DoubledMatrix{FiltrationMatrix(size, std::move(m)), n, f, g};
}

ExtendedField build_extended_field(const ScalarField& f, const ScalarField& g) {
  if (f.shape() != g.shape()) throw std::invalid_argument("f and g have different shapes");
  const std::size_t count = f.size();
  std::vector<std::size_t> shape{3};
  shape.insert(shape.end(), f.shape().begin(), f.shape().end());

  const ValueSource argmin = global_argmin(f.values(), g.values());
  const double floor = argmin.operand == Operand::first ? f[argmin.site] : g[argmin.site];

  std::vector<double> values(3 * count, floor);
  std::copy(f.values().begin(), f.values().end(), values.begin() + count);
  kernels::min_f64(f.values(), g.values(), std::span<double>(values).subspan(2 * count, count));

  std::vector<ValueSource> provenance(3 * count, argmin);
  for (std::size_t i = 0; i < count; ++i) {
    const auto site = static_cast<Index>(i);
    provenance[count + i] = {Operand::first, site};
    provenance[2 * count + i] = {f[i] <= g[i] ? Operand::first : Operand::second, site};
  }
  return ExtendedField{ScalarField(std::move(shape), std::move(values)), std::move(provenance), f.shape()};
}

int max_cross_degree(const GraphField& f) { return static_cast<int>(2 * f.vertex_count()); }
int max_cross_degree(const ScalarField& f) { return static_cast<int>(f.axes()); }

void check_cross_degree(const GraphField& f, int k) {
  if (k < 0) throw std::invalid_argument("degree must be non-negative");
  if (k > max_cross_degree(f))
    throw std::invalid_argument("degree " + std::to_string(k) + " exceeds doubled graph size 2n = " +
                                std::to_string(max_cross_degree(f)));
}

void check_cross_degree(const ScalarField& f, int k) {
  if (k < 0) throw std::invalid_argument("degree must be non-negative");
  if (k > max_cross_degree(f))
    throw std::invalid_argument("degree " + std::to_string(k) + " exceeds lattice dimension " +
                                std::to_string(max_cross_degree(f)) + " (extended lattice has " +
                                std::to_string(f.axes() + 1) + " axes)");
}

Barcode cross_barcode(const GraphField& f, const GraphField& g, int max_degree) {
  check_cross_degree(f, max_degree);
  return flag_persistence({build_doubled_matrix(f, g).matrix, max_degree});
}

Barcode cross_barcode(const ScalarField& f, const ScalarField& g, int max_degree) {
  if (f.shape() != g.shape()) throw std::invalid_argument("f and g have different shapes");
  check_cross_degree(f, max_degree);
  return cubical_persistence({build_extended_field(f, g).field, max_degree});
}

std::vector<Bar> f_cross_barcode(const GraphField& f, const GraphField& g, int k) {
  return finite_of_degree(cross_barcode(f, g, k), k);
}

std::vector<Bar> f_cross_barcode(const ScalarField& f, const ScalarField& g, int k) {
  return finite_of_degree(cross_barcode(f, g, k), k);
}

std::vector<LocalizedBar> localize(std::span<const Bar> bars,
                                   const std::vector<std::size_t>& original_shape) {
  std::vector<std::size_t> extended{3};
  extended.insert(extended.end(), original_shape.begin(), original_shape.end());
  auto site_of = [&](Index vertex) {
    auto linear = static_cast<std::size_t>(vertex);
    std::vector<std::size_t> coords(original_shape.size());
    for (std::size_t axis = extended.size(); axis-- > 1;) {
      coords[axis - 1] = linear % extended[axis];
      linear /= extended[axis];
    }
    return Site{std::move(coords), false};
  };
  std::vector<LocalizedBar> out;
  out.reserve(bars.size());
  for (const Bar& bar : bars) {
    LocalizedBar located{bar, site_of(bar.birth_vertex), std::nullopt};
    if (!bar.essential()) located.death_site = site_of(bar.death_vertex);
    out.push_back(std::move(located));
  }
  return out;
}

std::vector<LocalizedBar> localize(std::span<const Bar> bars, const DoubledMatrix& doubled) {
  const auto n = static_cast<Index>(doubled.n);
  auto site_of = [&](Index vertex, Index peer) {
    if (vertex != peer) {
      const auto src = doubled.source(static_cast<std::size_t>(vertex), static_cast<std::size_t>(peer));
      return Site{{static_cast<std::size_t>(src.site)}, false};
    }
    if (vertex == 2 * n) return Site{{}, true};
    return Site{{static_cast<std::size_t>(vertex < n ? vertex : vertex - n)}, false};
  };
  std::vector<LocalizedBar> out;
  out.reserve(bars.size());
  for (const Bar& bar : bars) {
    LocalizedBar located{bar, site_of(bar.birth_vertex, bar.birth_peer), std::nullopt};
    if (!bar.essential()) located.death_site = site_of(bar.death_vertex, bar.death_peer);
    out.push_back(std::move(located));
  }
  return out;
}

}  // namespace sftd
