#include <doctest.h>

#include <stdexcept>

#include "generators.hpp"
#include "identities.hpp"
#include "sftd/cross_barcode.hpp"
#include "oracle.hpp"
#include "sftd/metrics.hpp"

using namespace sftd;

namespace {
const double inf = kInfinity;
}

TEST_CASE("doubled matrix of a single vertex") {
  const GraphField f(1, {}, {3}), g(1, {}, {2});
  const auto d = build_doubled_matrix(f, g);
  const std::vector<double> want{2, 3, inf, 3, 3, 3, inf, 3, 2};
  CHECK(std::vector<double>(d.matrix.entries().begin(), d.matrix.entries().end()) == want);
  CHECK(d.origin() == 2);
}

TEST_CASE("A' layer is the element-wise min of edge filtrations") {
  const GraphField f(2, {{0, 1}}, {0, 1}), g(2, {{0, 1}}, {1, 0});
  const auto d = build_doubled_matrix(f, g);
  CHECK(d.matrix(0, 1) == 1);
  CHECK(d.matrix(0, 0) == 0);
  CHECK(d.matrix(1, 1) == 0);
  // F+ keeps the diagonal and the upper triangle only.
  CHECK(d.matrix(2, 0) == 0);
  CHECK(d.matrix(2, 1) == 1);
  CHECK(d.matrix(3, 0) == inf);
  CHECK(d.matrix(3, 1) == 1);
  CHECK(d.source(0, 1) == ValueSource{Operand::first, 1});
}

TEST_CASE("doubled matrices are valid filtrations") {
  testgen::Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto f = testgen::random_graph(rng, 1 + rng.below(6), 0.5, t % 2 == 0);
    const auto g = f.with_values(testgen::random_reals(rng, f.vertex_count()));
    const auto d = build_doubled_matrix(f, g);
    const auto n = d.matrix.size();
    CHECK(n == 2 * f.vertex_count() + 1);
    // Every finite entry is reproduced by its source.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (d.matrix(i, j) == inf) continue;
        const auto s = d.source(i, j);
        const double v = s.operand == Operand::first ? f[static_cast<std::size_t>(s.site)] : g[static_cast<std::size_t>(s.site)];
        CHECK(v == d.matrix(i, j));
      }
  }
  CHECK_THROWS_AS(build_doubled_matrix(GraphField(2, {{0, 1}}, {0, 0}), GraphField(2, {}, {0, 0})), std::invalid_argument);
}

TEST_CASE("extended field layers") {
  const auto e = build_extended_field(ScalarField({2}, {0, 1}), ScalarField({2}, {1, 0}));
  CHECK(e.field.shape() == std::vector<std::size_t>{3, 2});
  CHECK(std::vector<double>(e.field.values().begin(), e.field.values().end()) == std::vector<double>{0, 0, 0, 1, 0, 0});
  CHECK(e.provenance[4] == ValueSource{Operand::first, 0});
  CHECK(e.provenance[5] == ValueSource{Operand::second, 1});
  const auto same = build_extended_field(ScalarField({2}, {4, 5}), ScalarField({2}, {4, 5}));
  CHECK(same.field[2] == same.field[4]);
  CHECK(same.field[3] == same.field[5]);
  CHECK_THROWS_AS(build_extended_field(ScalarField({4, 4}, std::vector<double>(16)), ScalarField({4, 5}, std::vector<double>(20))),
                  std::invalid_argument);
}

TEST_CASE("identical inputs give empty cross-barcodes") {
  testgen::Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const auto f = testgen::random_graph(rng, 1 + rng.below(6), 0.6, t % 2 == 0);
    const auto code = cross_barcode(f, f, std::min(3, max_cross_degree(f)));
    CHECK(code.finite.empty());
    const auto lf = testgen::random_int_field(rng, {3, 3}, 3);
    CHECK(cross_barcode(lf, lf, 2).finite.empty());
  }
}

TEST_CASE("path graph against its minimum") {
  const GraphField f(3, {{0, 1}, {1, 2}}, {0, 2, 1});
  const auto bars = f_cross_barcode(f, f.with_values({0, 0, 0}), 1);
  REQUIRE(bars.size() == 1);
  CHECK(bars[0].birth == 1);
  CHECK(bars[0].death == 2);
}

TEST_CASE("two-site lattice") {
  const ScalarField f({2}, {0, 1}), g({2}, {1, 0});
  // Both orientations are empty: the single edge enters at 1 in every layer,
  // after the vertices that it joins.
  CHECK(f_cross_barcode(f, g, 0).empty());
  CHECK(f_cross_barcode(g, f, 0).empty());
  for (const auto* pair : {&f, &g}) {
    const auto& other = pair == &f ? g : f;
    const auto ext = build_extended_field(*pair, other);
    const auto code = oracle::reduce(oracle::enumerate(ext.field, 1), 1);
    CHECK(code.finite.empty());
  }
}

TEST_CASE("shifted barcode identity on lattices") {
  testgen::Rng rng(43);
  const std::vector<std::vector<std::size_t>> shapes{{5}, {3, 4}, {4, 4}, {2, 3, 2}};
  for (int t = 0; t < 40; ++t) {
    const auto& shape = shapes[t % shapes.size()];
    const auto f = t % 2 ? testgen::random_int_field(rng, shape, 4) : testgen::random_real_field(rng, shape);
    const auto g = identities::flat_at_min(f);
    for (int k = 0; k + 1 <= static_cast<int>(shape.size()); ++k)
      CHECK(testgen::intervals(f_cross_barcode(f, g, k + 1)) == identities::plain_finite(f, k));
  }
}

TEST_CASE("shifted barcode identity on graphs") {
  testgen::Rng rng(44);
  for (int t = 0; t < 60; ++t) {
    const auto f = testgen::random_graph(rng, 2 + rng.below(6), 0.5, t % 3 == 0);
    const auto g = identities::flat_at_min(f);
    for (int k = 0; k + 2 < static_cast<int>(f.vertex_count()) && k <= 2; ++k)
      CHECK(testgen::intervals(f_cross_barcode(f, g, k + 1)) == identities::graph_shifted_barcode(f, k));
    const auto c = testgen::random_chordal_graph(rng, 2 + rng.below(7));
    const auto cg = identities::flat_at_min(c);
    for (int k = 0; k + 1 < static_cast<int>(c.vertex_count()) && k <= 2; ++k)
      CHECK(testgen::intervals(f_cross_barcode(c, cg, k + 1)) == identities::plain_finite(c, k));
  }
}

TEST_CASE("stability under perturbation") {
  testgen::Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const auto f = testgen::random_real_field(rng, {4, 4});
    const auto g = testgen::random_real_field(rng, {4, 4});
    const double eps = rng.uniform(0, 0.1);
    auto jiggle = [&](const ScalarField& x) {
      std::vector<double> v(x.values().begin(), x.values().end());
      for (double& y : v) y += rng.uniform(-eps, eps);
      return ScalarField(x.shape(), v);
    };
    const auto f2 = jiggle(f), g2 = jiggle(g);
    for (int k = 0; k <= 2; ++k) {
      const auto a = Diagram::from_bars(f_cross_barcode(f, g, k), k);
      const auto b = Diagram::from_bars(f_cross_barcode(f2, g2, k), k);
      CHECK(bottleneck_distance(a, b) <= eps + 1e-9);
      for (const auto& bar : f_cross_barcode(f, f2, k)) CHECK(bar.length() <= eps + 1e-9);
    }
  }
}

TEST_CASE("localization") {
  Bar bar{1, 0.0, 1.0};
  bar.birth_vertex = static_cast<Index>((2 * 64 + 5) * 64 + 7);
  bar.death_vertex = bar.birth_vertex;
  const auto located = localize(std::vector<Bar>{bar}, std::vector<std::size_t>{64, 64});
  REQUIRE(located.size() == 1);
  CHECK(located[0].birth_site.coords == std::vector<std::size_t>{5, 7});
  CHECK(located[0].birth_color == kBirthColor);
  CHECK(located[0].death_color == kDeathColor);

  const GraphField f(3, {{0, 1}}, {0, 1, 2}), g(3, {{0, 1}}, {1, 1, 0});
  const auto d = build_doubled_matrix(f, g);
  Bar gb{0, 0.0, 2.0, 4, 6, 4, 6};
  const auto lg = localize(std::vector<Bar>{gb}, d);
  CHECK(lg[0].birth_site.coords == std::vector<std::size_t>{1});
  CHECK(lg[0].death_site->origin);
  Bar ab{0, 0.0, 1.0, 2, 2, 2, 2};
  CHECK(localize(std::vector<Bar>{ab}, d)[0].birth_site.coords == std::vector<std::size_t>{2});
  CHECK(localize(std::vector<Bar>{}, d).empty());
}

TEST_CASE("degree range") {
  const ScalarField f({3, 3, 3}, std::vector<double>(27, 0.0));
  CHECK_NOTHROW(cross_barcode(f, f, 3));
  try {
    cross_barcode(f, f, 5);
    FAIL("accepted degree 5");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("exceeds lattice dimension") != std::string::npos);
  }
  const GraphField g(2, {{0, 1}}, {0, 1});
  CHECK_NOTHROW(cross_barcode(g, g, 4));
  CHECK_THROWS_AS(cross_barcode(g, g, 5), std::invalid_argument);
}
