#include "sftd/kernels.hpp"

#if defined(SFTD_HAVE_NEON_KERNELS)

#include <arm_neon.h>

namespace sftd::kernels::neon {

void min_f64(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a.data() + i);
    const float64x2_t vb = vld1q_f64(b.data() + i);
    vst1q_f64(out.data() + i, vbslq_f64(vcltq_f64(va, vb), va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
             std::span<std::uint32_t> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vst1q_u32(out.data() + i, vmaxq_u32(vld1q_u32(a.data() + i), vld1q_u32(b.data() + i)));
  for (; i < n; ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
}

void rotate_f64(std::span<double> x, std::span<double> y, double c, double s) {
  const std::size_t n = x.size();
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x.data() + i);
    const float64x2_t vy = vld1q_f64(y.data() + i);
    vst1q_f64(x.data() + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(y.data() + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace sftd::kernels::neon

#endif
