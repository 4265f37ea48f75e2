#pragma once

// Persistence pairing over Z/2 shared by the flag and cubical engines.
//
// A filtration is presented as cells at positions 0..N-1 in filtration order
// (faces always precede cofaces). Degree 0 is paired with a union-find under
// the elder rule; higher degrees use the column algorithm with clearing,
// processing dimensions from the top down. Pairing is unique for a fixed
// total order, so both routes give the same pairs a plain reduction would.

#include <cstdint>
#include <vector>

namespace sftd::detail {

using Position = std::uint32_t;
inline constexpr Position kNoPosition = ~Position{0};

struct CellPair {
  int dim;  // degree of the class: dimension of the birth cell
  Position birth;
  Position death;
};

struct Pairing {
  std::vector<CellPair> pairs;
  std::vector<CellPair> essential;  // death == kNoPosition
};

/// Sparse column reduction with pivot lookup. Columns are sorted ascending;
/// the pivot is the last entry.
class ColumnReducer {
 public:
  explicit ColumnReducer(std::size_t cell_count) : owner_(cell_count, kNoSlot) {}

  /// Reduces `column` in place against the stored columns. If a pivot
  /// survives, the reduced column is stored under it and the pivot returned.
  Position reduce_and_store(std::vector<Position>& column);

  /// Forgets all stored columns.
  void reset();

 private:
  static constexpr std::uint32_t kNoSlot = ~std::uint32_t{0};

  void add_stored(std::vector<Position>& column, std::uint32_t slot);

  std::vector<std::uint32_t> owner_;
  std::vector<Position> owned_pivots_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Position> data_;
  std::vector<Position> scratch_;
};

/// Union-find over cell positions; each root remembers its oldest member.
class ElderUnionFind {
 public:
  explicit ElderUnionFind(std::size_t cell_count) : parent_(cell_count, kNoPosition) {}

  void make(Position v) { parent_[v] = v; }
  Position find(Position v);
  /// Joins two roots; the younger root (larger position) stops being a root
  /// and is returned.
  Position join(Position root_a, Position root_b);
  bool is_root(Position v) const { return parent_[v] == v; }

 private:
  std::vector<Position> parent_;
};

/// Computes persistence pairs for degrees 0..max_dim. `Filtration` provides:
///   std::size_t size() const;
///   int dim(Position) const;
///   void boundary(Position, std::vector<Position>& out) const;  // sorted ascending
template <class Filtration>
Pairing pair_cells(const Filtration& filtration, int max_dim) {
  const std::size_t n = filtration.size();
  Pairing result;
  std::vector<std::uint8_t> cleared(n, 0);
  std::vector<Position> column;

  if (max_dim >= 1) {
    ColumnReducer reducer(n);
    for (int d = max_dim + 1; d >= 2; --d) {
      reducer.reset();
      for (Position pos = 0; pos < n; ++pos) {
        if (filtration.dim(pos) != d || cleared[pos]) continue;
        filtration.boundary(pos, column);
        const Position low = reducer.reduce_and_store(column);
        if (low != kNoPosition) {
          result.pairs.push_back({d - 1, low, pos});
          cleared[low] = 1;
        } else if (d <= max_dim) {
          result.essential.push_back({d, pos, kNoPosition});
        }
      }
    }
  }

  ElderUnionFind components(n);
  for (Position pos = 0; pos < n; ++pos) {
    const int d = filtration.dim(pos);
    if (d == 0) {
      components.make(pos);
    } else if (d == 1) {
      filtration.boundary(pos, column);
      const Position a = components.find(column[0]);
      const Position b = components.find(column[1]);
      if (a != b) {
        result.pairs.push_back({0, components.join(a, b), pos});
      } else if (!cleared[pos] && max_dim >= 1) {
        result.essential.push_back({1, pos, kNoPosition});
      }
    }
  }
  for (Position pos = 0; pos < n; ++pos)
    if (filtration.dim(pos) == 0 && components.is_root(pos))
      result.essential.push_back({0, pos, kNoPosition});
  return result;
}

}  // namespace sftd::detail
