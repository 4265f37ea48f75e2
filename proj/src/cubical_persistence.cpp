#include "sftd/cubical_persistence.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "sftd/kernels.hpp"
#include "sftd/reduction.hpp"

namespace sftd {
namespace {

using detail::Position;

// Cells live on the doubled ("Khalimsky") grid of extent 2d-1 per axis: a
// coordinate is odd exactly when the cube extends along that axis.
class CubicalFiltration {
 public:
  CubicalFiltration(const ScalarField& field, int max_dim)
      : field_(field), axes_(field.axes()), top_dim_(max_dim + 1) {
    build_grid_strides();
    const auto grid_rank = cube_ranks();
    order_cells(grid_rank);
  }

  std::size_t size() const { return order_.size(); }
  int dim(Position pos) const { return dim_[pos]; }
  double value(Position pos) const { return levels_[rank_[pos]]; }

  void boundary(Position pos, std::vector<Position>& out) const {
    out.clear();
    const std::uint64_t id = order_[pos];
    for (std::size_t axis = 0; axis < axes_; ++axis) {
      if ((id / grid_stride_[axis]) % grid_extent_[axis] % 2 == 0) continue;
      out.push_back(position_of_[id - grid_stride_[axis]]);
      out.push_back(position_of_[id + grid_stride_[axis]]);
    }
    std::sort(out.begin(), out.end());
  }

  // Max-attaining vertex of the cube; smallest C-order index on ties.
  Index witness(Position pos) const {
    const std::uint64_t id = order_[pos];
    std::vector<std::size_t> lo(axes_);
    std::uint32_t mask = 0;
    for (std::size_t axis = 0; axis < axes_; ++axis) {
      const std::size_t k = (id / grid_stride_[axis]) % grid_extent_[axis];
      lo[axis] = k / 2;
      if (k % 2 == 1) mask |= 1u << axis;
    }
    Index best = kNoVertex;
    double best_value = 0.0;
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      std::size_t linear = 0;
      for (std::size_t axis = 0; axis < axes_; ++axis)
        linear = linear * field_.shape()[axis] + lo[axis] + ((sub >> axis) & 1u);
      const double v = field_[linear];
      const auto candidate = static_cast<Index>(linear);
      if (best == kNoVertex || v > best_value || (v == best_value && candidate < best)) {
        best = candidate;
        best_value = v;
      }
      if (sub == 0) break;
    }
    return best;
  }

 private:
  void build_grid_strides() {
    grid_extent_.resize(axes_);
    grid_stride_.resize(axes_);
    std::uint64_t total = 1;
    for (std::size_t axis = axes_; axis-- > 0;) {
      grid_extent_[axis] = 2 * field_.shape()[axis] - 1;
      grid_stride_[axis] = total;
      total *= grid_extent_[axis];
    }
    if (total >= detail::kNoPosition) throw std::invalid_argument("lattice too large for cubical persistence");
    grid_size_ = total;
  }

  // Rank of every cube's filtration value on the doubled grid, propagated
  // one axis at a time: an odd coordinate takes the max of its two neighbours.
  std::vector<std::uint32_t> cube_ranks() {
    const auto values = field_.values();
    levels_.assign(values.begin(), values.end());
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());

    std::vector<std::uint32_t> grid(grid_size_, 0);
    std::vector<std::size_t> coords(axes_, 0);
    for (std::size_t v = 0; v < values.size(); ++v) {
      std::uint64_t id = 0;
      for (std::size_t axis = 0; axis < axes_; ++axis) id += 2 * coords[axis] * grid_stride_[axis];
      grid[id] = static_cast<std::uint32_t>(
          std::lower_bound(levels_.begin(), levels_.end(), values[v]) - levels_.begin());
      for (std::size_t axis = axes_; axis-- > 0;) {
        if (++coords[axis] < field_.shape()[axis]) break;
        coords[axis] = 0;
      }
    }

    for (std::size_t axis = 0; axis < axes_; ++axis) {
      const std::uint64_t inner = grid_stride_[axis];
      const std::uint64_t extent = grid_extent_[axis];
      const std::uint64_t outer = grid_size_ / (inner * extent);
      for (std::uint64_t o = 0; o < outer; ++o) {
        std::uint32_t* block = grid.data() + o * extent * inner;
        for (std::uint64_t t = 1; t + 1 < extent; t += 2) {
          std::uint32_t* row = block + t * inner;
          if (inner >= 16) {
            kernels::max_u32({row - inner, inner}, {row + inner, inner}, {row, inner});
          } else {
            for (std::uint64_t i = 0; i < inner; ++i) row[i] = std::max(row[i - inner], row[i + inner]);
          }
        }
      }
    }
    return grid;
  }

  template <class Visit>
  void for_each_cell(Visit&& visit) const {
    const std::size_t masks = std::size_t{1} << axes_;
    std::vector<std::size_t> coords(axes_, 0);
    for (std::size_t v = 0; v < field_.size(); ++v) {
      std::uint64_t anchor_id = 0;
      std::uint32_t allowed = 0;
      for (std::size_t axis = 0; axis < axes_; ++axis) {
        anchor_id += 2 * coords[axis] * grid_stride_[axis];
        if (coords[axis] + 1 < field_.shape()[axis]) allowed |= 1u << axis;
      }
      for (std::uint32_t mask = 0; mask < masks; ++mask) {
        if ((mask & ~allowed) != 0) continue;
        const int d = std::popcount(mask);
        if (d > top_dim_) continue;
        std::uint64_t id = anchor_id;
        for (std::size_t axis = 0; axis < axes_; ++axis)
          if ((mask >> axis) & 1u) id += grid_stride_[axis];
        visit(id, d);
      }
      for (std::size_t axis = axes_; axis-- > 0;) {
        if (++coords[axis] < field_.shape()[axis]) break;
        coords[axis] = 0;
      }
    }
  }

  // Stable counting sort on (rank, dim) over cells enumerated in
  // (anchor, mask) order.
  void order_cells(const std::vector<std::uint32_t>& grid_rank) {
    const std::size_t dims = static_cast<std::size_t>(top_dim_) + 1;
    std::vector<std::uint32_t> start(levels_.size() * dims + 1, 0);
    for_each_cell([&](std::uint64_t id, int d) { ++start[grid_rank[id] * dims + d + 1]; });
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];

    const std::size_t n = start.back();
    order_.resize(n);
    dim_.resize(n);
    rank_.resize(n);
    position_of_.assign(grid_size_, detail::kNoPosition);
    for_each_cell([&](std::uint64_t id, int d) {
      const std::uint32_t r = grid_rank[id];
      const Position pos = start[r * dims + d]++;
      order_[pos] = static_cast<std::uint32_t>(id);
      dim_[pos] = static_cast<std::uint8_t>(d);
      rank_[pos] = r;
      position_of_[id] = pos;
    });
  }

  const ScalarField& field_;
  std::size_t axes_;
  int top_dim_;
  std::vector<std::uint64_t> grid_extent_;
  std::vector<std::uint64_t> grid_stride_;
  std::uint64_t grid_size_ = 0;
  std::vector<double> levels_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint8_t> dim_;
  std::vector<std::uint32_t> rank_;
  std::vector<Position> position_of_;
};

}  // namespace

Barcode cubical_persistence(const CubicalSpec& input) {
  if (input.max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  if (static_cast<std::size_t>(input.max_dim) > input.field.axes())
    throw std::invalid_argument("max_dim " + std::to_string(input.max_dim) +
                                " exceeds the number of lattice axes (" +
                                std::to_string(input.field.axes()) + ")");

  const CubicalFiltration filtration(input.field, input.max_dim);
  const auto pairing = detail::pair_cells(filtration, input.max_dim);

  Barcode barcode;
  barcode.max_dim = input.max_dim;
  for (const auto& p : pairing.pairs) {
    const double birth = filtration.value(p.birth);
    const double death = filtration.value(p.death);
    if (!(birth < death)) continue;
    const Index bv = filtration.witness(p.birth);
    const Index dv = filtration.witness(p.death);
    barcode.finite.push_back({p.dim, birth, death, bv, dv, bv, dv});
  }
  for (const auto& p : pairing.essential) {
    const Index bv = filtration.witness(p.birth);
    barcode.essential.push_back({p.dim, filtration.value(p.birth), kInfinity, bv, kNoVertex, bv, kNoVertex});
  }
  barcode.sort();
  return barcode;
}

}  // namespace sftd
