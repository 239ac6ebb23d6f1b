#include <doctest.h>

#include <cmath>
#include <random>

#include "test_oracles.hpp"
#include "votfmid/qsc_operators.hpp"

using namespace votfmid;

TEST_SUITE("qsc_space") {

TEST_CASE("basis value tables") {
  const int m = 9;
  CHECK(basis_value(4, 4, m) == doctest::Approx(6.0 / 8.0));
  CHECK(basis_value(3, 4, m) == doctest::Approx(1.0 / 8.0));
  CHECK(basis_value(0, 0, m) == doctest::Approx(4.0 / 8.0));
  CHECK(basis_value(1, 0, m) == doctest::Approx(4.0 / 8.0));
  CHECK(basis_value(0, 1, m) == doctest::Approx(1.0 / 8.0));
  CHECK(basis_value(0, 2, m) == doctest::Approx(0.0));
  CHECK(basis_value(m + 1, m + 1, m) == doctest::Approx(4.0 / 8.0));
  for (int i = 0; i <= m + 1; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= m + 1; ++j) sum += basis_value(j, i, m);
    CHECK(sum == doctest::Approx(1.0));  // partition of unity at the abscissae
  }
  CHECK_THROWS_AS(basis_value(m + 2, 0, m), Error);
}

TEST_CASE("basis second-derivative tables") {
  const int m = 7;
  const double dx = 0.25;
  CHECK(basis_second(3, 3, dx, m) == doctest::Approx(-2.0 / (dx * dx)));
  CHECK(basis_second(0, 1, dx, m) == doctest::Approx(1.0 / (dx * dx)));
  CHECK(basis_second(0, 2, dx, m) == doctest::Approx(0.0));
  CHECK(basis_second(0, 3, dx, m) == doctest::Approx(0.0));
  for (int i = 1; i <= m; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= m + 1; ++j) sum += basis_second(j, i, dx, m);
    CHECK(sum == doctest::Approx(0.0));  // second differences kill constants
  }
  CHECK_THROWS_AS(basis_second(0, 0, dx, m), Error);  // endpoint abscissa
}

TEST_CASE("value stencil") {
  const SpaceGrid g = SpaceGrid::unit_square(6, 5);
  Grid2d ones(g.nx(), g.ny(), 1.0), out;
  apply_value_x(g, ones, out);
  for (double x : out.v) CHECK(x == doctest::Approx(1.0));

  Grid2d unit = g.zeros();
  unit(3, 2) = 1.0;
  apply_value_x(g, unit, out);
  CHECK(out(2, 2) == doctest::Approx(1.0 / 8.0));
  CHECK(out(3, 2) == doctest::Approx(6.0 / 8.0));
  CHECK(out(4, 2) == doctest::Approx(1.0 / 8.0));
  CHECK(out(5, 2) == doctest::Approx(0.0));
  CHECK(out(3, 1) == doctest::Approx(0.0));
}

TEST_CASE("second-difference stencil") {
  const SpaceGrid g = SpaceGrid::unit_square(8, 4);
  Grid2d lin = g.zeros(), quad = g.zeros(), out;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      lin(i, j) = 3.0 * i - 1.0;
      quad(i, j) = static_cast<double>(i) * i;
    }
  apply_second_x(g, lin, out);
  for (int i = 1; i <= g.mx; ++i)
    for (int j = 0; j < g.ny(); ++j) CHECK(out(i, j) == doctest::Approx(0.0));
  apply_second_x(g, quad, out);
  for (int i = 1; i <= g.mx; ++i)
    for (int j = 0; j < g.ny(); ++j)
      CHECK(out(i, j) == doctest::Approx(2.0 / (g.dx * g.dx)));
  for (int j = 0; j < g.ny(); ++j) {
    CHECK(out(0, j) == 0.0);
    CHECK(out(g.mx + 1, j) == 0.0);
  }
}

TEST_CASE("backward difference") {
  const SpaceGrid g = SpaceGrid::unit_square(5, 5);
  Grid2d ramp = g.zeros(), out;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) ramp(i, j) = i;
  apply_diff_x(g, ramp, out);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) CHECK(out(i, j) == doctest::Approx(1.0 / g.dx));

  Grid2d c(g.nx(), g.ny(), 7.0);
  apply_diff_x(g, c, out);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) CHECK(out(i, j) == doctest::Approx(0.0));
}

TEST_CASE("fourth-difference boost stencil") {
  const SpaceGrid g = SpaceGrid::unit_square(8, 8);
  Grid2d unit = g.zeros(), out;
  unit(1, 4) = 1.0;
  apply_fourth_x(g, unit, out);
  CHECK(out(1, 4) == doctest::Approx(-11.0 / (24.0 * g.dx * g.dx)));
  CHECK(out(2, 4) == doctest::Approx(-5.0 / (24.0 * g.dx * g.dx)));
  CHECK(out(3, 4) == doctest::Approx(1.0 / (24.0 * g.dx * g.dx)));

  const SpaceGrid small = SpaceGrid::unit_square(5, 8);
  CHECK_THROWS_AS(apply_fourth_x(small, unit, out), Error);
}

TEST_CASE("interpolation reproduces biquadratics and halves second-derivative error") {
  const SpaceGrid g = SpaceGrid::unit_square(8, 9);
  SUBCASE("constants") {
    const Grid2d c = interpolate_dofs(g, g.sample([](double, double) { return 1.0; }));
    for (double x : c.v) CHECK(x == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("tensor quadratics are exact") {
    auto f = [](double x, double y) {
      return (1.0 + 2.0 * x - 0.5 * x * x) * (0.25 - y + 1.5 * y * y);
    };
    const Grid2d c = interpolate_dofs(g, g.sample(f));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int p = 0; p < 50; ++p) {
      const double x = pick(rng), y = pick(rng);
      CHECK(eval_spline(g, c, x, y) == doctest::Approx(f(x, y)).epsilon(1e-12));
    }
  }
  SUBCASE("second-derivative error drops by ~4 under mesh halving") {
    using std::numbers::pi;
    auto f = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    auto fxx = [](double x, double y) { return -pi * pi * std::sin(pi * x) * std::sin(pi * y); };
    auto err_of = [&](int m) {
      const SpaceGrid gg = SpaceGrid::unit_square(m, m);
      const Grid2d c = interpolate_dofs(gg, gg.sample(f));
      Grid2d vy, sxy;
      apply_value_y(gg, c, vy);
      apply_second_x(gg, vy, sxy);
      double worst = 0.0;
      for (int i = 1; i <= gg.mx; ++i)
        for (int j = 0; j < gg.ny(); ++j)
          worst = std::max(worst, std::abs(sxy(i, j) - fxx(gg.colloc_x(i), gg.colloc_y(j))));
      return worst;
    };
    const double ratio = err_of(16) / err_of(32);
    CHECK(ratio > 3.4);
    CHECK(ratio < 4.6);
  }
}

TEST_CASE("spline evaluation") {
  const SpaceGrid g(0.0, 2.0, -1.0, 1.0, 7, 6);
  Grid2d ones(g.nx(), g.ny(), 1.0);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> px(0.0, 2.0), py(-1.0, 1.0);
  for (int p = 0; p < 30; ++p)
    CHECK(eval_spline(g, ones, px(rng), py(rng)) == doctest::Approx(1.0).epsilon(1e-14));

  Grid2d c = g.zeros();
  std::normal_distribution<double> gauss;
  for (double& x : c.v) x = gauss(rng);
  Grid2d th;
  apply_value_xy(g, c, th);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      CHECK(eval_spline(g, c, g.colloc_x(i), g.colloc_y(j)) ==
            doctest::Approx(th(i, j)).epsilon(1e-12));

  CHECK_THROWS_AS(eval_spline(g, c, 2.5, 0.0), Error);
  CHECK_THROWS_AS(eval_spline(g, c, 1.0, -1.5), Error);
}

TEST_CASE("inner product and norms") {
  const SpaceGrid g = SpaceGrid::unit_square(6, 4);
  const Grid2d ones(g.nx(), g.ny(), 1.0);
  const double nrm2 = l2_norm(g, ones) * l2_norm(g, ones);
  CHECK(nrm2 == doctest::Approx(g.dx * g.dy * (g.mx + 2) * (g.my + 2)).epsilon(1e-13));

  Grid2d a = g.zeros(), b = g.zeros();
  a(1, 1) = 3.0;
  b(4, 2) = -2.0;
  CHECK(inner_product(g, a, b) == doctest::Approx(0.0));  // disjoint supports

  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  Grid2d u = g.zeros();
  for (double& x : u.v) x = gauss(rng);
  CHECK(l2_norm(g, u) * l2_norm(g, u) ==
        doctest::Approx(inner_product(g, u, u)).epsilon(1e-15));
}

}  // TEST_SUITE
