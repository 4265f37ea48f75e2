#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sftd/kernels.hpp"
#include "sftd/synth.hpp"

using namespace sftd;

namespace {

using MinFn = void (*)(std::span<const double>, std::span<const double>, std::span<double>);
using MaxFn = void (*)(std::span<const std::uint32_t>, std::span<const std::uint32_t>, std::span<std::uint32_t>);
using RotFn = void (*)(std::span<double>, std::span<double>, double, double);

struct Variant {
  const char* name;
  MinFn min;
  MaxFn max;
  RotFn rot;
};

std::vector<Variant> variants() {
  std::vector<Variant> v;
#if defined(SFTD_HAVE_AVX2_KERNELS)
  if (kernels::isa_supported(kernels::Isa::avx2))
    v.push_back({"avx2", kernels::avx2::min_f64, kernels::avx2::max_u32, kernels::avx2::rotate_f64});
#endif
#if defined(SFTD_HAVE_NEON_KERNELS)
  v.push_back({"neon", kernels::neon::min_f64, kernels::neon::max_u32, kernels::neon::rotate_f64});
#endif
  v.push_back({"dispatch", kernels::min_f64, kernels::max_u32, kernels::rotate_f64});
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar reference semantics") {
  std::vector<double> a{1, -0.0, 3}, b{2, 0.0, -3}, out(3);
  kernels::scalar::min_f64(a, b, out);
  CHECK(out == std::vector<double>{1, 0.0, -3});
  std::vector<std::uint32_t> x{1, 5, 0xffffffffu}, y{2, 4, 0}, m(3);
  kernels::scalar::max_u32(x, y, m);
  CHECK(m == std::vector<std::uint32_t>{2, 5, 0xffffffffu});
  std::vector<double> r{1, 0}, s{0, 1};
  kernels::scalar::rotate_f64(r, s, 0.0, 1.0);
  CHECK(r == std::vector<double>{0, -1});
  CHECK(s == std::vector<double>{1, 0});
}

TEST_CASE("SIMD variants match the scalar reference bit for bit") {
  synth::Rng rng(7);
  for (const auto& v : variants()) {
    CAPTURE(v.name);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
      std::vector<double> a(n), b(n);
      std::vector<std::uint32_t> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform(-5, 5);
        b[i] = i % 5 == 0 ? a[i] : rng.uniform(-5, 5);
        if (i % 7 == 3) a[i] = -0.0, b[i] = 0.0;
        x[i] = static_cast<std::uint32_t>(rng.next_u64());
        y[i] = i % 4 == 0 ? x[i] : static_cast<std::uint32_t>(rng.next_u64());
      }
      std::vector<double> ref(n), got(n);
      kernels::scalar::min_f64(a, b, ref);
      v.min(a, b, got);
      CHECK(same_bits(ref, got));

      std::vector<std::uint32_t> mref(n), mgot(n);
      kernels::scalar::max_u32(x, y, mref);
      v.max(x, y, mgot);
      CHECK(mref == mgot);

      const double c = std::cos(0.3), s = std::sin(0.3);
      auto a1 = a, b1 = b, a2 = a, b2 = b;
      kernels::scalar::rotate_f64(a1, b1, c, s);
      v.rot(a2, b2, c, s);
      CHECK(same_bits(a1, a2));
      CHECK(same_bits(b1, b2));
    }
  }
}

TEST_CASE("dispatch reports a supported instruction set") {
  CHECK(kernels::isa_supported(kernels::active_isa()));
  CHECK(!kernels::isa_name(kernels::active_isa()).empty());
  std::vector<double> a(3), b(2), out(3);
  CHECK_THROWS_AS(kernels::min_f64(a, b, out), std::invalid_argument);
}
