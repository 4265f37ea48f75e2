#include <doctest.h>

#include <stdexcept>

#include "generators.hpp"
#include "oracle.hpp"
#include "sftd/cubical_persistence.hpp"

using namespace sftd;

TEST_CASE("constant field") {
  for (auto shape : {std::vector<std::size_t>{5}, {3, 4}, {2, 3, 2}}) {
    std::size_t n = 1;
    for (auto d : shape) n *= d;
    const auto b = cubical_persistence({ScalarField(shape, std::vector<double>(n, 2.5)), static_cast<int>(shape.size())});
    CHECK(b.finite.empty());
    REQUIRE(b.essential.size() == 1);
    CHECK(b.essential[0].dim == 0);
    CHECK(b.essential[0].birth == 2.5);
  }
}

TEST_CASE("two minima and a maximum") {
  const auto b = cubical_persistence({ScalarField({3}, {1, 3, 2}), 0});
  REQUIRE(b.finite.size() == 1);
  CHECK(b.finite[0].birth == 2);
  CHECK(b.finite[0].death == 3);
  CHECK(b.finite[0].birth_vertex == 2);
  CHECK(b.finite[0].death_vertex == 1);
  REQUIRE(b.essential.size() == 1);
  CHECK(b.essential[0].birth == 1);
}

TEST_CASE("ring filled by its center") {
  const auto b = cubical_persistence({ScalarField({3, 3}, {0, 0, 0, 0, 1, 0, 0, 0, 0}), 1});
  const auto loops = b.finite_in(1);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].birth == 0);
  CHECK(loops[0].death == 1);
  CHECK(loops[0].death_vertex == 4);
  CHECK(b.essential.size() == 1);
}

TEST_CASE("max_dim guard") {
  CHECK_NOTHROW(cubical_persistence({ScalarField({2, 2}, {0, 1, 2, 3}), 2}));
  CHECK_THROWS_AS(cubical_persistence({ScalarField({2, 2}, {0, 1, 2, 3}), 3}), std::invalid_argument);
}

TEST_CASE("random integer fields agree with the oracle") {
  testgen::Rng rng(21);
  const std::vector<std::vector<std::size_t>> shapes{{4}, {2, 3}, {4, 4}, {3, 4}, {3, 3, 2}, {2, 2, 2}, {1, 4}};
  for (int t = 0; t < 150; ++t) {
    const auto& shape = shapes[t % shapes.size()];
    const auto f = testgen::random_int_field(rng, shape, 4);
    const int max_dim = static_cast<int>(shape.size());
    const auto got = cubical_persistence({f, max_dim});
    const auto want = oracle::reduce(oracle::enumerate(f, max_dim), max_dim);
    CHECK(got.finite == want.finite);
    CHECK(got.essential == want.essential);
  }
}

TEST_CASE("axis permutation leaves the intervals unchanged") {
  testgen::Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto f = testgen::random_int_field(rng, {3, 4}, 4);
    std::vector<double> transposed(12);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) transposed[j * 3 + i] = f[i * 4 + j];
    const auto a = cubical_persistence({f, 1});
    const auto b = cubical_persistence({ScalarField({4, 3}, transposed), 1});
    for (int k = 0; k <= 1; ++k) CHECK(a.intervals(k) == b.intervals(k));
  }
}

TEST_CASE("constant shift moves every endpoint") {
  testgen::Rng rng(23);
  const auto f = testgen::random_int_field(rng, {4, 4}, 4);
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x -= 3.0;
  const auto a = cubical_persistence({f, 1});
  const auto b = cubical_persistence({ScalarField({4, 4}, v), 1});
  REQUIRE(a.finite.size() == b.finite.size());
  for (std::size_t i = 0; i < a.finite.size(); ++i) {
    CHECK(b.finite[i].birth == a.finite[i].birth - 3.0);
    CHECK(b.finite[i].death == a.finite[i].death - 3.0);
  }
}
