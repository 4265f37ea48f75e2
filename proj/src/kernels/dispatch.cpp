#include <cstdlib>
#include <stdexcept>

#include "sftd/kernels.hpp"

namespace sftd::kernels {
namespace {

struct Table {
  Isa isa;
  void (*min_f64)(std::span<const double>, std::span<const double>, std::span<double>);
  void (*max_u32)(std::span<const std::uint32_t>, std::span<const std::uint32_t>,
                  std::span<std::uint32_t>);
  void (*rotate_f64)(std::span<double>, std::span<double>, double, double);
};

Table select() {
  if (std::getenv("SFTD_FORCE_SCALAR") == nullptr) {
#if defined(SFTD_HAVE_AVX2_KERNELS)
    if (isa_supported(Isa::avx2))
      return {Isa::avx2, avx2::min_f64, avx2::max_u32, avx2::rotate_f64};
#endif
#if defined(SFTD_HAVE_NEON_KERNELS)
    return {Isa::neon, neon::min_f64, neon::max_u32, neon::rotate_f64};
#endif
  }
  return {Isa::scalar, scalar::min_f64, scalar::max_u32, scalar::rotate_f64};
}

const Table& table() {
  static const Table t = select();
  return t;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
  if (a != out || b != out) throw std::invalid_argument("kernel operand sizes differ");
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SFTD_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SFTD_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return table().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_sizes(a.size(), b.size(), out.size());
  table().min_f64(a, b, out);
}

void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out) {
  check_sizes(a.size(), b.size(), out.size());
  table().max_u32(a, b, out);
}

void rotate_f64(std::span<double> x, std::span<double> y, double c, double s) {
  check_sizes(x.size(), y.size(), x.size());
  table().rotate_f64(x, y, c, s);
}

}  // namespace sftd::kernels
