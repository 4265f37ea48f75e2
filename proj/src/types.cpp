#include "sftd/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sftd {

ScalarField::ScalarField(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (shape_.empty()) throw std::invalid_argument("field shape must have at least one axis");
  std::size_t count = 1;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    if (shape_[axis] == 0)
      throw std::invalid_argument("field axis " + std::to_string(axis) + " has zero extent");
    count *= shape_[axis];
  }
  if (count != values_.size())
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values but shape requires " + std::to_string(count));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("non-finite value at linear index " + std::to_string(i));
}

std::vector<std::size_t> ScalarField::unravel(std::size_t linear) const {
  std::vector<std::size_t> coords(shape_.size());
  for (std::size_t axis = shape_.size(); axis-- > 0;) {
    coords[axis] = linear % shape_[axis];
    linear /= shape_[axis];
  }
  return coords;
}

std::size_t ScalarField::ravel(std::span<const std::size_t> coords) const {
  if (coords.size() != shape_.size()) throw std::invalid_argument("coordinate rank mismatch");
  std::size_t linear = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    if (coords[axis] >= shape_[axis]) throw std::out_of_range("coordinate outside lattice");
    linear = linear * shape_[axis] + coords[axis];
  }
  return linear;
}

GraphField::GraphField(std::size_t vertex_count, std::vector<std::pair<Index, Index>> edges,
                       std::vector<double> values)
    : values_(std::move(values)) {
  if (vertex_count == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (values_.size() != vertex_count)
    throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                " does not match vertex count " + std::to_string(vertex_count));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("non-finite value at vertex " + std::to_string(i));
  const auto n = static_cast<Index>(vertex_count);
  for (auto [i, j] : edges) {
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has an endpoint out of range");
    edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

GraphField GraphField::with_values(std::vector<double> values) const {
  return GraphField(vertex_count(), edges_, std::move(values));
}

FiltrationMatrix::FiltrationMatrix(std::size_t size, std::vector<double> entries)
    : size_(size), entries_(std::move(entries)) {
  if (size_ == 0) throw std::invalid_argument("filtration matrix must be non-empty");
  if (entries_.size() != size_ * size_)
    throw std::invalid_argument("filtration matrix entry count does not match size");
  for (std::size_t i = 0; i < size_; ++i) {
    const double di = (*this)(i, i);
    if (!std::isfinite(di))
      throw std::invalid_argument("diagonal entry " + std::to_string(i) + " is not finite");
    for (std::size_t j = i + 1; j < size_; ++j) {
      const double e = (*this)(i, j);
      if (!(e == (*this)(j, i)))
        throw std::invalid_argument("filtration matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::isnan(e) || e == -kInfinity)
        throw std::invalid_argument("invalid edge value at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      if (e < kInfinity && (e < di || e < (*this)(j, j)))
        throw std::invalid_argument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") enters before one of its endpoints");
    }
  }
}

FiltrationMatrix FiltrationMatrix::lower_star(const GraphField& field) {
  const std::size_t n = field.vertex_count();
  std::vector<double> entries(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = field[i];
  for (auto [i, j] : field.edges()) {
    const double e = std::max(field[i], field[j]);
    entries[i * n + j] = e;
    entries[j * n + i] = e;
  }
  return FiltrationMatrix(n, std::move(entries));
}

bool bar_less(const Bar& a, const Bar& b) noexcept {
  return std::tie(a.dim, a.birth, a.death, a.birth_vertex, a.birth_peer, a.death_vertex,
                  a.death_peer) < std::tie(b.dim, b.birth, b.death, b.birth_vertex,
                                           b.birth_peer, b.death_vertex, b.death_peer);
}

std::vector<Bar> Barcode::finite_in(int dim) const {
  std::vector<Bar> out;
  for (const Bar& bar : finite)
    if (bar.dim == dim) out.push_back(bar);
  return out;
}

std::vector<Bar> Barcode::essential_in(int dim) const {
  std::vector<Bar> out;
  for (const Bar& bar : essential)
    if (bar.dim == dim) out.push_back(bar);
  return out;
}

std::vector<std::pair<double, double>> Barcode::intervals(int dim) const {
  std::vector<std::pair<double, double>> out;
  for (const Bar& bar : finite)
    if (bar.dim == dim) out.emplace_back(bar.birth, bar.death);
  std::sort(out.begin(), out.end());
  return out;
}

void Barcode::sort() {
  std::sort(finite.begin(), finite.end(), bar_less);
  std::sort(essential.begin(), essential.end(), bar_less);
}

void SparseGradient::add(bool to_f, Index site, double amount) {
  auto& target = to_f ? wrt_f : wrt_g;
  target[site] += amount;
}

std::size_t SparseGradient::nonzeros() const {
  std::size_t count = 0;
  for (const auto& [site, value] : wrt_f) count += value != 0.0;
  for (const auto& [site, value] : wrt_g) count += value != 0.0;
  return count;
}

double global_min(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw std::invalid_argument("f and g have different lengths");
  if (f.empty()) throw std::invalid_argument("global_min of empty inputs");
  double m = f[0];
  for (double v : f) m = std::min(m, v);
  for (double v : g) m = std::min(m, v);
  return m;
}

}  // namespace sftd
