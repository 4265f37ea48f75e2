#include "sftd/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

#include "sftd/cubical_persistence.hpp"
#include "sftd/flag_persistence.hpp"

namespace sftd {
namespace {

double power(double length, double p) { return p == 1.0 ? length : std::pow(length, p); }

bool wanted(const SftdConfig& config, int dim) {
  return std::find(config.degrees.begin(), config.degrees.end(), dim) != config.degrees.end();
}

// One orientation: barcode plus a map from witness to input value.
struct Oriented {
  Barcode barcode;
  std::function<ValueSource(const Bar&, bool death)> source;
};

Oriented orient(const ScalarField& a, const ScalarField& b, int max_degree) {
  if (a.shape() != b.shape()) throw std::invalid_argument("f and g have different shapes");
  check_cross_degree(a, max_degree);
  auto extended = std::make_shared<ExtendedField>(build_extended_field(a, b));
  Barcode barcode = cubical_persistence({extended->field, max_degree});
  return {std::move(barcode), [extended](const Bar& bar, bool death) {
            return extended->provenance[static_cast<std::size_t>(death ? bar.death_vertex : bar.birth_vertex)];
          }};
}

Oriented orient(const GraphField& a, const GraphField& b, int max_degree) {
  check_cross_degree(a, max_degree);
  auto doubled = std::make_shared<DoubledMatrix>(build_doubled_matrix(a, b));
  Barcode barcode = flag_persistence({doubled->matrix, max_degree});
  return {std::move(barcode), [doubled](const Bar& bar, bool death) {
            return death ? doubled->source(static_cast<std::size_t>(bar.death_vertex),
                                           static_cast<std::size_t>(bar.death_peer))
                         : doubled->source(static_cast<std::size_t>(bar.birth_vertex),
                                           static_cast<std::size_t>(bar.birth_peer));
          }};
}

void accumulate_value(const Barcode& barcode, const SftdConfig& config, double weight, SftdValue& out) {
  for (auto& [k, v] : out.per_degree) v += weight * bar_power_sum(barcode.finite, k, config.p);
}

void accumulate_gradient(const Oriented& oriented, const SftdConfig& config, double weight,
                         bool swapped, SparseGradient& out) {
  for (const Bar& bar : oriented.barcode.finite) {
    if (!wanted(config, bar.dim)) continue;
    const double slope = weight * config.p * power(bar.length(), config.p - 1.0);
    const ValueSource death = oriented.source(bar, true);
    const ValueSource birth = oriented.source(bar, false);
    out.add((death.operand == Operand::first) != swapped, death.site, slope);
    out.add((birth.operand == Operand::first) != swapped, birth.site, -slope);
  }
}

void finish(SftdValue& value) {
  value.total = 0.0;
  for (const auto& [k, v] : value.per_degree) value.total += v;
}

template <class Field>
SftdValue sftd_impl(const Field& f, const Field& g, const SftdConfig& config) {
  config.validate();
  SftdValue value;
  for (int k : config.degrees) value.per_degree[k] = 0.0;
  const double weight = config.symmetric ? 0.5 : 1.0;
  accumulate_value(orient(f, g, config.max_degree()).barcode, config, weight, value);
  if (config.symmetric) accumulate_value(orient(g, f, config.max_degree()).barcode, config, weight, value);
  finish(value);
  return value;
}

template <class Field>
SftdGradient sftd_gradient_impl(const Field& f, const Field& g, const SftdConfig& config) {
  config.validate();
  SftdGradient result;
  for (int k : config.degrees) result.value.per_degree[k] = 0.0;
  const double weight = config.symmetric ? 0.5 : 1.0;
  const auto forward = orient(f, g, config.max_degree());
  accumulate_value(forward.barcode, config, weight, result.value);
  accumulate_gradient(forward, config, weight, false, result.gradient);
  if (config.symmetric) {
    const auto reverse = orient(g, f, config.max_degree());
    accumulate_value(reverse.barcode, config, weight, result.value);
    accumulate_gradient(reverse, config, weight, true, result.gradient);
  }
  finish(result.value);
  return result;
}

}  // namespace

void SftdConfig::validate() const {
  if (degrees.empty()) throw std::invalid_argument("at least one degree is required");
  for (int k : degrees)
    if (k < 0) throw std::invalid_argument("degrees must be non-negative");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be a finite real >= 1");
}

int SftdConfig::max_degree() const { return *std::max_element(degrees.begin(), degrees.end()); }

double bar_power_sum(std::span<const Bar> bars, int k, double p) {
  double sum = 0.0;
  for (const Bar& bar : bars)
    if (bar.dim == k && !bar.essential()) sum += power(bar.length(), p);
  return sum;
}

SftdValue sftd(const ScalarField& f, const ScalarField& g, const SftdConfig& config) {
  return sftd_impl(f, g, config);
}

SftdValue sftd(const GraphField& f, const GraphField& g, const SftdConfig& config) {
  return sftd_impl(f, g, config);
}

SftdGradient sftd_gradient(const ScalarField& f, const ScalarField& g, const SftdConfig& config) {
  return sftd_gradient_impl(f, g, config);
}

SftdGradient sftd_gradient(const GraphField& f, const GraphField& g, const SftdConfig& config) {
  return sftd_gradient_impl(f, g, config);
}

}  // namespace sftd
