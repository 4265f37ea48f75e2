#include "sftd/kernels.hpp"

namespace sftd::kernels::scalar {

void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
}

void rotate_f64(std::span<double> x, std::span<double> y, double c, double s) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace sftd::kernels::scalar
