#include "sftd/flag_persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "sftd/reduction.hpp"

namespace sftd {
namespace {

using detail::Position;

// Binomial coefficients C(n, k) for k <= max_k, with overflow detection.
class Binomials {
 public:
  Binomials(std::size_t n, std::size_t max_k) : max_k_(max_k), table_((n + 1) * (max_k + 1), 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (std::size_t k = 1; k <= std::min(i, max_k); ++k) {
        const std::uint64_t a = at(i - 1, k - 1);
        const std::uint64_t b = k <= i - 1 ? at(i - 1, k) : 0;
        if (__builtin_add_overflow(a, b, &at(i, k)))
          throw std::invalid_argument("flag complex too large to index");
      }
    }
  }
  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    return k > n ? 0 : table_[n * (max_k_ + 1) + k];
  }

 private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * (max_k_ + 1) + k]; }
  std::size_t max_k_;
  std::vector<std::uint64_t> table_;
};

class FlagFiltration {
 public:
  FlagFiltration(const FiltrationMatrix& m, int max_dim)
      : m_(m), top_dim_(max_dim + 1), binomials_(m.size(), static_cast<std::size_t>(top_dim_) + 1),
        vertices_(top_dim_ + 1), values_(top_dim_ + 1), lookup_(top_dim_ + 1) {
    enumerate();
    order();
  }

  std::size_t size() const { return position_dim_.size(); }
  int dim(Position pos) const { return position_dim_[pos]; }
  double value(Position pos) const { return values_[position_dim_[pos]][position_ordinal_[pos]]; }

  void boundary(Position pos, std::vector<Position>& out) const {
    out.clear();
    const int d = position_dim_[pos];
    if (d == 0) return;
    const std::uint32_t* v = simplex(pos);
    for (int skip = 0; skip <= d; ++skip) {
      std::uint64_t key = 0;
      int rank = 1;
      for (int i = 0; i <= d; ++i) {
        if (i == skip) continue;
        key += binomials_(v[i], rank++);
      }
      out.push_back(lookup_[d - 1].at(key));
    }
    std::sort(out.begin(), out.end());
  }

  // Lexicographically smallest entry (u, v), u <= v, attaining the value.
  std::pair<Index, Index> witness(Position pos) const {
    const int d = position_dim_[pos];
    const std::uint32_t* v = simplex(pos);
    const double target = value(pos);
    for (int i = 0; i <= d; ++i) {
      if (m_(v[i], v[i]) == target) return {v[i], v[i]};
      for (int j = i + 1; j <= d; ++j)
        if (m_(v[i], v[j]) == target) return {v[i], v[j]};
    }
    throw std::logic_error("no entry attains the simplex value");
  }

 private:
  const std::uint32_t* simplex(Position pos) const {
    const int d = position_dim_[pos];
    return vertices_[d].data() + static_cast<std::size_t>(position_ordinal_[pos]) * (d + 1);
  }

  void enumerate() {
    const std::size_t n = m_.size();
    upper_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (m_(i, j) < kInfinity) upper_[i].push_back(static_cast<std::uint32_t>(j));

    std::vector<std::uint32_t> clique;
    for (std::uint32_t v = 0; v < n; ++v) {
      clique.assign(1, v);
      extend(clique, m_(v, v), upper_[v]);
    }
  }

  // Depth-first over sorted adjacency: emits cliques in lexicographic order.
  void extend(std::vector<std::uint32_t>& clique, double value,
              const std::vector<std::uint32_t>& candidates) {
    const int d = static_cast<int>(clique.size()) - 1;
    vertices_[d].insert(vertices_[d].end(), clique.begin(), clique.end());
    values_[d].push_back(value);
    if (d == top_dim_) return;
    std::vector<std::uint32_t> next;
    for (std::uint32_t w : candidates) {
      double extended = std::max(value, m_(w, w));
      for (std::uint32_t u : clique) extended = std::max(extended, m_(u, w));
      next.clear();
      std::set_intersection(candidates.begin(), candidates.end(), upper_[w].begin(),
                            upper_[w].end(), std::back_inserter(next));
      clique.push_back(w);
      extend(clique, extended, next);
      clique.pop_back();
    }
  }

  void order() {
    struct Entry {
      double value;
      int dim;
      std::uint32_t ordinal;
    };
    std::vector<Entry> entries;
    for (int d = 0; d <= top_dim_; ++d)
      for (std::uint32_t k = 0; k < values_[d].size(); ++k) entries.push_back({values_[d][k], d, k});
    if (entries.size() >= detail::kNoPosition) throw std::invalid_argument("flag complex too large");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.value != b.value) return a.value < b.value;
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.ordinal < b.ordinal;
    });
    position_dim_.resize(entries.size());
    position_ordinal_.resize(entries.size());
    for (int d = 0; d < top_dim_; ++d) lookup_[d].reserve(values_[d].size());
    for (Position pos = 0; pos < entries.size(); ++pos) {
      const Entry& e = entries[pos];
      position_dim_[pos] = static_cast<std::uint8_t>(e.dim);
      position_ordinal_[pos] = e.ordinal;
      if (e.dim == top_dim_) continue;  // never a facet of an enumerated simplex
      const std::uint32_t* v = vertices_[e.dim].data() + static_cast<std::size_t>(e.ordinal) * (e.dim + 1);
      std::uint64_t key = 0;
      for (int i = 0; i <= e.dim; ++i) key += binomials_(v[i], i + 1);
      lookup_[e.dim].emplace(key, pos);
    }
  }

  const FiltrationMatrix& m_;
  int top_dim_;
  Binomials binomials_;
  std::vector<std::vector<std::uint32_t>> upper_;
  std::vector<std::vector<std::uint32_t>> vertices_;
  std::vector<std::vector<double>> values_;
  std::vector<std::unordered_map<std::uint64_t, Position>> lookup_;
  std::vector<std::uint8_t> position_dim_;
  std::vector<std::uint32_t> position_ordinal_;
};

}  // namespace

Barcode flag_persistence(const FlagComplexSpec& input) {
  if (input.max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  if (static_cast<std::size_t>(input.max_dim) >= input.matrix.size())
    throw std::invalid_argument("max_dim " + std::to_string(input.max_dim) +
                                " too large for a matrix of size " +
                                std::to_string(input.matrix.size()));

  const FlagFiltration filtration(input.matrix, input.max_dim);
  const auto pairing = detail::pair_cells(filtration, input.max_dim);

  Barcode barcode;
  barcode.max_dim = input.max_dim;
  for (const auto& p : pairing.pairs) {
    const double birth = filtration.value(p.birth);
    const double death = filtration.value(p.death);
    if (!(birth < death)) continue;
    const auto [bu, bv] = filtration.witness(p.birth);
    const auto [du, dv] = filtration.witness(p.death);
    barcode.finite.push_back({p.dim, birth, death, bu, du, bv, dv});
  }
  for (const auto& p : pairing.essential) {
    const auto [bu, bv] = filtration.witness(p.birth);
    barcode.essential.push_back({p.dim, filtration.value(p.birth), kInfinity, bu, kNoVertex, bv, kNoVertex});
  }
  barcode.sort();
  return barcode;
}

}  // namespace sftd
