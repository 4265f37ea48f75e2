#include "sftd/reduction.hpp"

#include <algorithm>

namespace sftd::detail {

Position ColumnReducer::reduce_and_store(std::vector<Position>& column) {
  while (!column.empty()) {
    const Position pivot = column.back();
    const std::uint32_t slot = owner_[pivot];
    if (slot == kNoSlot) {
      owner_[pivot] = static_cast<std::uint32_t>(offsets_.size() - 1);
      owned_pivots_.push_back(pivot);
      data_.insert(data_.end(), column.begin(), column.end());
      offsets_.push_back(data_.size());
      return pivot;
    }
    add_stored(column, slot);
  }
  return kNoPosition;
}

void ColumnReducer::add_stored(std::vector<Position>& column, std::uint32_t slot) {
  const Position* other = data_.data() + offsets_[slot];
  const Position* other_end = data_.data() + offsets_[slot + 1];
  scratch_.clear();
  auto it = column.begin();
  while (it != column.end() && other != other_end) {
    if (*it < *other) {
      scratch_.push_back(*it++);
    } else if (*other < *it) {
      scratch_.push_back(*other++);
    } else {
      ++it;
      ++other;
    }
  }
  scratch_.insert(scratch_.end(), it, column.end());
  scratch_.insert(scratch_.end(), other, other_end);
  column.swap(scratch_);
}

void ColumnReducer::reset() {
  for (Position p : owned_pivots_) owner_[p] = kNoSlot;
  owned_pivots_.clear();
  offsets_.assign(1, 0);
  data_.clear();
}

Position ElderUnionFind::find(Position v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

Position ElderUnionFind::join(Position root_a, Position root_b) {
  const Position older = std::min(root_a, root_b);
  const Position younger = std::max(root_a, root_b);
  parent_[younger] = older;
  return younger;
}

}  // namespace sftd::detail
