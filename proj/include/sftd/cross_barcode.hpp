#pragma once

// Comparison complexes for a pair of functions f, g on a common domain and
// their F-Cross-Barcodes.
//
// Graphs: the doubled graph on {A'_0..A'_{n-1}, A_0..A_{n-1}, O}, stored as a
// (2n+1)x(2n+1) filtration matrix with indices [0,n) for A', [n,2n) for A
// and 2n for O.
//
// Lattices: an extended lattice with one extra leading axis of extent 3:
// layer 0 is the constant global min, layer 1 is f, layer 2 is min(f, g).

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sftd/types.hpp"

namespace sftd {

/// Which input a value of the comparison complex was copied from.
enum class Operand { first, second };

struct ValueSource {
  Operand operand = Operand::first;
  Index site = 0;  // vertex / linear lattice index in the original domain

  friend bool operator==(const ValueSource&, const ValueSource&) = default;
};

/// Global argmin over f then g; ties prefer f, then the smaller index.
ValueSource global_argmin(std::span<const double> f, std::span<const double> g);

struct DoubledMatrix {
  FiltrationMatrix matrix;
  std::size_t n = 0;
  GraphField f;
  GraphField g;

  std::size_t origin() const noexcept { return 2 * n; }
  /// Input value that the matrix entry (u, v) equals.
  ValueSource source(std::size_t u, std::size_t v) const;
};

DoubledMatrix build_doubled_matrix(const GraphField& f, const GraphField& g);

struct ExtendedField {
  ScalarField field;                      // shape (3, d1, ..., dn)
  std::vector<ValueSource> provenance;    // one per extended vertex
  std::vector<std::size_t> original_shape;
};

/// Layer-2 vertices are attributed to f where f <= g, to g otherwise. Layer-0
/// vertices are attributed to the global argmin, which the constant layer
/// equals.
ExtendedField build_extended_field(const ScalarField& f, const ScalarField& g);

/// F-Cross-Barcode for every degree 0..max_degree. Finite bars form the
/// cross-barcode proper; the essential bars (including the one dim-0 bar born
/// at the global min) are kept in `essential`.
Barcode cross_barcode(const GraphField& f, const GraphField& g, int max_degree);
Barcode cross_barcode(const ScalarField& f, const ScalarField& g, int max_degree);

/// Finite bars of degree k only.
std::vector<Bar> f_cross_barcode(const GraphField& f, const GraphField& g, int k);
std::vector<Bar> f_cross_barcode(const ScalarField& f, const ScalarField& g, int k);

/// Largest degree accepted for a domain.
int max_cross_degree(const GraphField& f);
int max_cross_degree(const ScalarField& f);
/// Throws std::invalid_argument unless 0 <= k <= max_cross_degree(f).
void check_cross_degree(const GraphField& f, int k);
void check_cross_degree(const ScalarField& f, int k);

inline constexpr std::string_view kBirthColor = "#ff8c00";  // orange
inline constexpr std::string_view kDeathColor = "#d62728";  // red

/// Location of a bar event in the original domain. Graph sites have a single
/// coordinate (the vertex); `origin` marks the extra vertex O, which has no
/// place in the original graph.
struct Site {
  std::vector<std::size_t> coords;
  bool origin = false;

  friend bool operator==(const Site&, const Site&) = default;
};

struct LocalizedBar {
  Bar bar;
  Site birth_site;
  std::optional<Site> death_site;  // absent for essential bars
  std::string_view birth_color = kBirthColor;
  std::string_view death_color = kDeathColor;
};

/// Drops the layer coordinate of the extended-lattice witness vertices.
std::vector<LocalizedBar> localize(std::span<const Bar> bars,
                                   const std::vector<std::size_t>& original_shape);
/// Maps doubled-graph witnesses to original vertices: n+i and i both map to
/// i, 2n maps to the origin sentinel. Edge-attained values map to the vertex
/// whose input value they equal.
std::vector<LocalizedBar> localize(std::span<const Bar> bars, const DoubledMatrix& doubled);

}  // namespace sftd
