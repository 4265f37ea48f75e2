#include "sftd/kernels.hpp"

#if defined(SFTD_HAVE_AVX2_KERNELS)

#include <immintrin.h>

// Compiled with per-function target attributes so the translation unit builds
// without -mavx2; callers must check isa_supported(Isa::avx2) first.
#define SFTD_AVX2 __attribute__((target("avx2")))

namespace sftd::kernels::avx2 {

SFTD_AVX2 void min_f64(std::span<const double> a, std::span<const double> b,
                       std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    const __m256d vb = _mm256_loadu_pd(b.data() + i);
    // Selects va where va < vb, vb otherwise: same tie rule as the scalar path.
    const __m256d lt = _mm256_cmp_pd(va, vb, _CMP_LT_OQ);
    _mm256_storeu_pd(out.data() + i, _mm256_blendv_pd(vb, va, lt));
  }
  for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

SFTD_AVX2 void max_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), _mm256_max_epu32(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
}

SFTD_AVX2 void rotate_f64(std::span<double> x, std::span<double> y, double c, double s) {
  const std::size_t n = x.size();
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x.data() + i);
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    // No FMA: keeps rounding identical to the scalar reference.
    _mm256_storeu_pd(x.data() + i, _mm256_sub_pd(_mm256_mul_pd(vc, vx), _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_mul_pd(vs, vx), _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace sftd::kernels::avx2

#endif
