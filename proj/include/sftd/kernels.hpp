#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference
// implementation and, where the target supports it, a SIMD variant. The
// dispatching entry points pick the widest variant the running CPU supports;
// all variants produce bit-identical results.

#include <cstdint>
#include <span>
#include <string_view>

namespace sftd::kernels {

enum class Isa { scalar, avx2, neon };

/// Instruction set used by the dispatching entry points. Setting the
/// environment variable SFTD_FORCE_SCALAR forces the scalar reference.
Isa active_isa();
std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

/// out[i] = a[i] < b[i] ? a[i] : b[i]
void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out[i] = max(a[i], b[i])
void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out);
/// Plane rotation applied to two rows: x <- c*x - s*y, y <- s*x + c*y.
void rotate_f64(std::span<double> x, std::span<double> y, double c, double s);

namespace scalar {
void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out);
void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out);
void rotate_f64(std::span<double> x, std::span<double> y, double c, double s);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SFTD_HAVE_AVX2_KERNELS 1
namespace avx2 {
void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out);
void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out);
void rotate_f64(std::span<double> x, std::span<double> y, double c, double s);
}  // namespace avx2
#endif

#if defined(__aarch64__) && defined(__ARM_NEON)
#define SFTD_HAVE_NEON_KERNELS 1
namespace neon {
void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out);
void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out);
void rotate_f64(std::span<double> x, std::span<double> y, double c, double s);
}  // namespace neon
#endif

}  // namespace sftd::kernels
