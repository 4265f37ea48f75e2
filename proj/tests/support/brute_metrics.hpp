#pragma once

// Exhaustive matching enumeration for small persistence diagrams.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sftd/metrics.hpp"

namespace brute {

namespace detail {

inline double linf(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}
inline double diag(const std::pair<double, double>& a) { return (a.second - a.first) / 2.0; }

// Visits every partial matching: match[i] = index in b or -1 for the diagonal.
template <class Visit>
void matchings(std::size_t n, std::size_t m, std::vector<int>& match, std::vector<bool>& used, Visit&& visit) {
  const std::size_t i = match.size();
  if (i == n) {
    visit(match, used);
    return;
  }
  match.push_back(-1);
  matchings(n, m, match, used, visit);
  for (std::size_t j = 0; j < m; ++j) {
    if (used[j]) continue;
    used[j] = true;
    match.back() = static_cast<int>(j);
    matchings(n, m, match, used, visit);
    used[j] = false;
  }
  match.pop_back();
}

}  // namespace detail

inline double bottleneck(const sftd::Diagram& a, const sftd::Diagram& b) {
  double best = INFINITY;
  std::vector<int> match;
  std::vector<bool> used(b.points.size(), false);
  detail::matchings(a.points.size(), b.points.size(), match, used, [&](const auto& mt, const auto& us) {
    double cost = 0.0;
    for (std::size_t i = 0; i < mt.size(); ++i)
      cost = std::max(cost, mt[i] < 0 ? detail::diag(a.points[i]) : detail::linf(a.points[i], b.points[mt[i]]));
    for (std::size_t j = 0; j < us.size(); ++j)
      if (!us[j]) cost = std::max(cost, detail::diag(b.points[j]));
    best = std::min(best, cost);
  });
  return best;
}

inline double wasserstein(const sftd::Diagram& a, const sftd::Diagram& b, double q) {
  double best = INFINITY;
  std::vector<int> match;
  std::vector<bool> used(b.points.size(), false);
  detail::matchings(a.points.size(), b.points.size(), match, used, [&](const auto& mt, const auto& us) {
    double cost = 0.0;
    for (std::size_t i = 0; i < mt.size(); ++i)
      cost += std::pow(mt[i] < 0 ? detail::diag(a.points[i]) : detail::linf(a.points[i], b.points[mt[i]]), q);
    for (std::size_t j = 0; j < us.size(); ++j)
      if (!us[j]) cost += std::pow(detail::diag(b.points[j]), q);
    best = std::min(best, cost);
  });
  return std::pow(best, 1.0 / q);
}

}  // namespace brute
