#pragma once

// Domain types shared by every module: lattice fields, graph fields, the
// vertex/edge filtration matrix consumed by the flag engine, and barcodes.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace sftd {

using Index = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr Index kNoVertex = -1;

/// Dense n-dimensional lattice of finite values stored in C (row-major) order.
class ScalarField {
 public:
  ScalarField(std::vector<std::size_t> shape, std::vector<double> values);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Number of lattice axes.
  std::size_t axes() const noexcept { return shape_.size(); }
  double operator[](std::size_t linear) const { return values_[linear]; }

  std::vector<std::size_t> unravel(std::size_t linear) const;
  std::size_t ravel(std::span<const std::size_t> coords) const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

/// Undirected simple graph with one finite value per vertex. Edges are
/// stored normalized (i < j), sorted and deduplicated.
class GraphField {
 public:
  GraphField(std::size_t vertex_count, std::vector<std::pair<Index, Index>> edges,
             std::vector<double> values);

  std::size_t vertex_count() const noexcept { return values_.size(); }
  const std::vector<std::pair<Index, Index>>& edges() const noexcept { return edges_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t v) const { return values_[v]; }

  /// Same topology, new vertex values.
  GraphField with_values(std::vector<double> values) const;
  bool same_graph(const GraphField& other) const noexcept {
    return vertex_count() == other.vertex_count() && edges_ == other.edges_;
  }

  friend bool operator==(const GraphField&, const GraphField&) = default;

 private:
  std::vector<std::pair<Index, Index>> edges_;
  std::vector<double> values_;
};

/// Symmetric matrix of filtration values: vertex values on the diagonal,
/// edge values off the diagonal, +inf where there is no edge.
class FiltrationMatrix {
 public:
  /// `entries` is row-major N x N. Validates symmetry, finite diagonal and
  /// that every finite edge enters no earlier than both endpoints.
  FiltrationMatrix(std::size_t size, std::vector<double> entries);

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

  /// Lower-star matrix of a graph field: f(i) on the diagonal, max(f(i), f(j)) on edges.
  static FiltrationMatrix lower_star(const GraphField& field);

 private:
  std::size_t size_;
  std::vector<double> entries_;
};

/// One persistence interval. `birth_vertex`/`death_vertex` name the vertex
/// that attains the filtration value of the birth/death cell. For the flag
/// engine the value may be attained by an edge entry only; `*_peer` then holds
/// the other endpoint of that edge (otherwise peer == vertex).
struct Bar {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  Index birth_vertex = kNoVertex;
  Index death_vertex = kNoVertex;
  Index birth_peer = kNoVertex;
  Index death_peer = kNoVertex;

  bool essential() const noexcept { return death == kInfinity; }
  double length() const noexcept { return death - birth; }

  friend bool operator==(const Bar&, const Bar&) = default;
};

/// Deterministic order: (dim, birth, death, birth_vertex, birth_peer, death_vertex, death_peer).
bool bar_less(const Bar& a, const Bar& b) noexcept;

/// Finite bars and essential bars (death = +inf) for degrees 0..max_dim.
/// Zero-length bars are never stored.
struct Barcode {
  int max_dim = 0;
  std::vector<Bar> finite;
  std::vector<Bar> essential;

  std::vector<Bar> finite_in(int dim) const;
  std::vector<Bar> essential_in(int dim) const;
  /// Sorted (birth, death) pairs of the finite bars in `dim`.
  std::vector<std::pair<double, double>> intervals(int dim) const;
  void sort();
};

/// Per-vertex derivative contributions with respect to each input function.
struct SparseGradient {
  std::map<Index, double> wrt_f;
  std::map<Index, double> wrt_g;

  void add(bool to_f, Index site, double amount);
  std::size_t nonzeros() const;
};

/// Minimum over the concatenation of f and g.
double global_min(std::span<const double> f, std::span<const double> g);

}  // namespace sftd
