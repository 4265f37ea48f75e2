#pragma once

#include "sftd/types.hpp"

namespace sftd {

/// Lower-star cubical filtration of a lattice field (lattice points are
/// 0-cells). Homology is computed for degrees 0..max_dim.
struct CubicalSpec {
  ScalarField field;
  int max_dim = 0;
};

/// Persistence barcode of the cubical filtration over Z/2.
///
/// An elementary cube is addressed by its anchor vertex (minimal corner) and
/// a bitmask of extended axes, bit i standing for axis i. A cube enters at
/// the max of its vertex values; ties are broken by (dimension, anchor C-order
/// index, bitmask). Bars are attributed to the max-attaining vertex of the
/// birth/death cube, smallest C-order index on ties.
///
/// Throws std::invalid_argument when max_dim < 0 or max_dim > field.axes().
Barcode cubical_persistence(const CubicalSpec& input);

}  // namespace sftd
