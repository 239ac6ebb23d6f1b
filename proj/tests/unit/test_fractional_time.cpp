#include <doctest.h>

#include <cmath>

#include "test_oracles.hpp"
#include "votfmid/fractional_time.hpp"

using namespace votfmid;

TEST_SUITE("fractional_time") {

TEST_CASE("kernel_omega known values") {
  // Near-constant kernel: beta -> 0 gives t^0 / Gamma(1) = 1.
  CHECK(kernel_omega(1e-9, 2.0) == doctest::Approx(1.0).epsilon(1e-7));
  // Gamma(1/2) = sqrt(pi).
  CHECK(kernel_omega(0.5, 1.0) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
  // Frozen from a 30-digit evaluation of 0.25^(-0.3)/Gamma(0.7).
  CHECK(kernel_omega(0.3, 0.25) == doctest::Approx(1.1676825543475801).epsilon(1e-14));
}

TEST_CASE("kernel_omega rejects the singular point and bad orders") {
  CHECK_THROWS_AS(kernel_omega(0.5, 0.0), Error);
  CHECK_THROWS_AS(kernel_omega(0.5, -1.0), Error);
  CHECK_THROWS_AS(kernel_omega(1.0, 1.0), Error);
}

TEST_CASE("variable order presets and bounds") {
  const VariableOrder a0 = VariableOrder::preset(AlphaPreset::A0, 1.0);
  CHECK(a0(0.0) == doctest::Approx(0.45));
  CHECK(a0(1.0) == doctest::Approx(0.15));
  CHECK(a0.lower() == doctest::Approx(0.15).epsilon(1e-9));
  CHECK(a0.upper() == doctest::Approx(0.45).epsilon(1e-9));
  CHECK(a0.warnings().empty());  // decreasing

  const VariableOrder a2 = VariableOrder::preset(AlphaPreset::A2, 1.0);
  CHECK(a2.at_zero() == doctest::Approx(0.3));
  CHECK_FALSE(a2.warnings().empty());  // increasing order is flagged, not rejected

  const VariableOrder a3 = VariableOrder::preset(AlphaPreset::A3, 1.0);
  CHECK(a3.upper() == doctest::Approx(0.85).epsilon(1e-9));
  CHECK(a3.lower() == doctest::Approx(0.3).epsilon(1e-9));

  CHECK_THROWS_AS(VariableOrder::affine(1.2, -0.1, 1.0), Error);  // leaves (0,1)
  CHECK_THROWS_AS(VariableOrder::affine(0.5, 0.6, 1.0), Error);
}

TEST_CASE("time grid nodes") {
  const TimeGrid grid(1.0, 8);
  CHECK(grid.tau == doctest::Approx(0.125));
  CHECK(grid.node(8) == 1.0);  // dyadic: exact
  CHECK(grid.midpoint(1) == doctest::Approx(0.0625));
  CHECK(grid.warnings.empty());
  const TimeGrid coarse(4.0, 2);
  CHECK_FALSE(coarse.warnings.empty());  // tau = 2 > 1
}

TEST_CASE("midpoint orders") {
  const VariableOrder a0 = VariableOrder::preset(AlphaPreset::A0, 1.0);
  const auto mids = midpoint_orders(a0, TimeGrid(1.0, 2));
  REQUIRE(mids.size() == 2);
  CHECK(mids[0] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(mids[1] == doctest::Approx(0.225).epsilon(1e-15));

  const auto flat = midpoint_orders(VariableOrder::affine(0.5, 0.0, 1.0), TimeGrid(1.0, 5));
  for (double a : flat) CHECK(a == doctest::Approx(0.5));

  const auto a3 = midpoint_orders(VariableOrder::preset(AlphaPreset::A3, 1.0), TimeGrid(1.0, 4));
  CHECK(a3[0] == doctest::Approx(0.521875).epsilon(1e-15));
  CHECK(a3[1] == doctest::Approx(0.453125).epsilon(1e-15));
  CHECK(a3[2] == doctest::Approx(0.453125).epsilon(1e-15));
  CHECK(a3[3] == doctest::Approx(0.521875).epsilon(1e-15));
}

TEST_CASE("l1plus_coeff closed forms") {
  // 1/Gamma(2.5), frozen from a 30-digit evaluation.
  CHECK(l1plus_coeff(1, 1.0, 0.5) == doctest::Approx(0.75225277806367505).epsilon(1e-14));
  // (2^1.5 - 2)/Gamma(2.5), frozen likewise.
  CHECK(l1plus_coeff(2, 1.0, 0.5) == doctest::Approx(0.62318660601362418).epsilon(1e-14));
  // Constant-kernel limit: j^2 - 2(j-1)^2 + (j-2)^2 = 2, over Gamma(3) = 2.
  for (int j : {2, 3, 7})
    CHECK(l1plus_coeff(j, 0.5, 1e-10) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("quadrature oracle agrees with the closed form") {
  CHECK(coeff_quadrature_oracle(1, 1.0, 0.5, 1e-10) ==
        doctest::Approx(l1plus_coeff(1, 1.0, 0.5)).epsilon(1e-10));
  CHECK(coeff_quadrature_oracle(5, 0.25, 0.7, 1e-10) ==
        doctest::Approx(l1plus_coeff(5, 0.25, 0.7)).epsilon(1e-10));
  CHECK(coeff_quadrature_oracle(2, 1.0, 0.5, 1e-10) ==
        doctest::Approx(l1plus_coeff(2, 1.0, 0.5)).epsilon(1e-10));
  CHECK(coeff_quadrature_oracle(3, 0.5, 1e-8, 1e-10) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(coeff_quadrature_oracle(1, 1.0, 0.5, 1e-13), Error);  // tolerance floor
}

TEST_CASE("l1plus_row structure and warnings") {
  const L1PlusRow one = l1plus_row(1, 1.0, 0.5);
  REQUIRE(one.a.size() == 1);
  CHECK(one.a[0] == doctest::Approx(0.75225277806367505).epsilon(1e-14));
  CHECK(one.b[0] == doctest::Approx(1.75225277806367505).epsilon(1e-14));

  const L1PlusRow row = l1plus_row(3, 0.5, 0.4);
  REQUIRE(row.b.size() == 3);
  CHECK(row.b[0] > row.b[1]);
  CHECK(row.b[1] > row.b[2]);
  CHECK(row.b[2] > 0.0);
  CHECK_FALSE(row.tau_warning);

  const L1PlusRow coarse = l1plus_row(2, 2.0, 0.9);
  CHECK(coarse.tau_warning);
}

TEST_CASE("history_sum_direct basics") {
  const L1PlusRow row = l1plus_row(4, 0.25, 0.3);
  const std::vector<double> constant(5, 3.7);
  CHECK(history_sum_direct(constant, row) == doctest::Approx(0.0));

  const L1PlusRow one = l1plus_row(1, 1.0, 0.5);
  const std::vector<double> ramp = {0.0, 1.0};
  CHECK(history_sum_direct(ramp, one) == doctest::Approx(one.a[0]));

  const std::vector<double> wrong(3, 0.0);
  CHECK_THROWS_AS(history_sum_direct(wrong, row), Error);
}

TEST_CASE("history_sum_direct converges at second order for t^3") {
  // The averaged frozen-order derivative of t^3 has the closed form
  // Gamma(4)/Gamma(5-a) (t_n^(4-a) - t_{n-1}^(4-a)) / tau; the discrete sum
  // must approach it as O(tau^2). Also cross-check the closed form against
  // the independent nested quadrature once.
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A0, 1.0);
  auto worst_defect = [&](int levels) {
    const TimeGrid grid(1.0, levels);
    const auto mids = midpoint_orders(vo, grid);
    double worst = 0.0;
    std::vector<double> v(static_cast<std::size_t>(levels) + 1);
    for (int k = 0; k <= levels; ++k) v[static_cast<std::size_t>(k)] = std::pow(grid.node(k), 3);
    for (int n = 2; n <= levels; ++n) {
      const double alpha = mids[static_cast<std::size_t>(n) - 1];
      const L1PlusRow row = l1plus_row(n, grid.tau, alpha);
      const double got =
          history_sum_direct({v.data(), static_cast<std::size_t>(n) + 1}, row);
      const double expect = std::tgamma(4.0) / std::tgamma(5.0 - alpha) *
                            (std::pow(grid.node(n), 4.0 - alpha) -
                             std::pow(grid.node(n - 1), 4.0 - alpha)) /
                            grid.tau;
      worst = std::max(worst, std::abs(got - expect));
    }
    return worst;
  };
  const double coarse = worst_defect(64);
  const double fine = worst_defect(128);
  CHECK(coarse / fine > 3.0);  // ~O(tau^2) decay
  CHECK(coarse / fine < 5.0);

  auto dv = [](double s) { return 3.0 * s * s; };
  const double quad = testing::caputo_frozen_avg(dv, 0.375, 0.5, 0.25, 1e-11);
  const double closed = std::tgamma(4.0) / std::tgamma(5.0 - 0.375) *
                        (std::pow(0.75, 4.0 - 0.375) - std::pow(0.5, 4.0 - 0.375)) / 0.25;
  CHECK(quad == doctest::Approx(closed).epsilon(1e-9));
}

}  // TEST_SUITE
