#include "sftd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sftd {
namespace {

double linf(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double to_diagonal(const std::pair<double, double>& a) { return (a.second - a.first) / 2.0; }

// Hopcroft-Karp maximum matching on a dense bipartite graph.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<int>> adjacency, int right_count)
      : adj_(std::move(adjacency)), match_left_(adj_.size(), -1), match_right_(right_count, -1),
        layer_(adj_.size()) {}

  int maximum_matching() {
    int size = 0;
    while (layered()) {
      for (std::size_t u = 0; u < adj_.size(); ++u)
        if (match_left_[u] == -1 && augment(static_cast<int>(u))) ++size;
    }
    return size;
  }

 private:
  bool layered() {
    std::queue<int> frontier;
    bool reachable_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      layer_[u] = match_left_[u] == -1 ? 0 : -1;
      if (layer_[u] == 0) frontier.push(static_cast<int>(u));
    }
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj_[u]) {
        const int w = match_right_[v];
        if (w == -1) {
          reachable_free = true;
        } else if (layer_[w] == -1) {
          layer_[w] = layer_[u] + 1;
          frontier.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool augment(int u) {
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w == -1 || (layer_[w] == layer_[u] + 1 && augment(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    layer_[u] = -1;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> layer_;
};

// Left side: points of a, then diagonal slots for b. Right side: points of
// b, then diagonal slots for a.
bool perfect_within(const Diagram& a, const Diagram& b, double radius) {
  const int n = static_cast<int>(a.points.size());
  const int m = static_cast<int>(b.points.size());
  std::vector<std::vector<int>> adj(n + m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j)
      if (linf(a.points[i], b.points[j]) <= radius) adj[i].push_back(j);
    if (to_diagonal(a.points[i]) <= radius) adj[i].push_back(m + i);
  }
  for (int j = 0; j < m; ++j) {
    if (to_diagonal(b.points[j]) <= radius) adj[n + j].push_back(j);
    for (int i = 0; i < n; ++i) adj[n + j].push_back(m + i);
  }
  return BipartiteMatcher(std::move(adj), n + m).maximum_matching() == n + m;
}

// Minimum-cost perfect assignment on a square cost matrix (row-major);
// returns the column chosen for every row.
std::vector<int> hungarian(const std::vector<double>& cost, int size) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0);
  std::vector<int> p(size + 1, 0), way(size + 1, 0);
  for (int i = 1; i <= size; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(size + 1, inf);
    std::vector<char> used(size + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= size; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * size + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= size; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(size, -1);
  for (int j = 1; j <= size; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

}  // namespace

Diagram Diagram::from_barcode(const Barcode& barcode, int dim) { return from_bars(barcode.finite, dim); }

Diagram Diagram::from_bars(std::span<const Bar> bars, int dim) {
  Diagram d;
  for (const Bar& bar : bars)
    if (bar.dim == dim && !bar.essential()) d.points.emplace_back(bar.birth, bar.death);
  return d;
}

double bottleneck_distance(const Diagram& a, const Diagram& b) {
  std::vector<double> candidates{0.0};
  for (const auto& x : a.points) {
    candidates.push_back(to_diagonal(x));
    for (const auto& y : b.points) candidates.push_back(linf(x, y));
  }
  for (const auto& y : b.points) candidates.push_back(to_diagonal(y));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest diagonal cost is always feasible, so the search is well posed.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_within(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

double wasserstein_distance(const Diagram& a, const Diagram& b, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("Wasserstein exponent q must be >= 1");
  const int n = static_cast<int>(a.points.size());
  const int m = static_cast<int>(b.points.size());
  const int size = n + m;
  if (size == 0) return 0.0;

  std::vector<double> cost(static_cast<std::size_t>(size) * size, 0.0);
  auto at = [&](int r, int c) -> double& { return cost[static_cast<std::size_t>(r) * size + c]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) at(i, j) = std::pow(linf(a.points[i], b.points[j]), q);
    for (int k = 0; k < n; ++k) at(i, m + k) = std::pow(to_diagonal(a.points[i]), q);
  }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) at(n + j, k) = std::pow(to_diagonal(b.points[k]), q);

  const auto assignment = hungarian(cost, size);
  double total = 0.0;
  for (int r = 0; r < size; ++r) total += at(r, assignment[r]);
  return std::pow(total, 1.0 / q);
}

}  // namespace sftd
