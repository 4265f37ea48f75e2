#pragma once

#include "sftd/types.hpp"

namespace sftd {

/// Flag (clique) complex filtration of a FiltrationMatrix. Homology is
/// computed for degrees 0..max_dim, so cliques up to dimension max_dim + 1
/// are enumerated.
struct FlagComplexSpec {
  FiltrationMatrix matrix;
  int max_dim = 0;
};

/// Persistence barcode of the flag filtration over Z/2.
///
/// A simplex enters at the max of its diagonal and edge entries; simplices
/// touching a +inf entry are absent. Ties are broken by dimension, then by
/// the lexicographic order of the sorted vertex tuple. Each bar is
/// attributed to the lexicographically smallest matrix entry (u, v), u <= v,
/// attaining the birth/death value: a diagonal entry gives vertex u, an edge
/// entry gives vertex u with peer v.
///
/// Throws std::invalid_argument when max_dim < 0 or max_dim >= matrix size.
Barcode flag_persistence(const FlagComplexSpec& input);

}  // namespace sftd
