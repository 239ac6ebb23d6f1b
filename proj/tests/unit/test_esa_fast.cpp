#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_oracles.hpp"
#include "votfmid/esa_fast.hpp"
#include "votfmid/fractional_time.hpp"

using namespace votfmid;

TEST_SUITE("esa_fast") {

TEST_CASE("parameter selection matches the closed formulas") {
  const EsaQuadrature q = esa_params(0.4, 0.9, 1e-8, 1.0, std::pow(2.0, -10));
  // Frozen from a 30-digit evaluation of the parameter formulas.
  CHECK(q.h == doctest::Approx(0.31301118952167538).epsilon(1e-14));
  CHECK(q.n_lo == -147);
  CHECK(q.n_hi == 30);
  CHECK(static_cast<int>(q.lambda.size()) == q.count());
  for (std::size_t k = 1; k < q.lambda.size(); ++k) CHECK(q.lambda[k] > q.lambda[k - 1]);
  CHECK(q.lambda.front() > 0.0);
}

TEST_CASE("parameter domain errors") {
  CHECK_NOTHROW(esa_params(0.4, 0.9, 1.0 / std::numbers::e, 1.0, 1.0 / 16.0));  // boundary eps
  CHECK_THROWS_AS(esa_params(0.4, 0.9, 0.5, 1.0, 1.0 / 16.0), Error);   // eps > 1/e
  CHECK_THROWS_AS(esa_params(0.4, 0.9, 1e-8, 1.0, 1.0), Error);         // tau >= T
  CHECK_THROWS_AS(esa_params(0.4, 0.9, 1e-8, 1.0, 2.0), Error);
  CHECK_THROWS_AS(esa_params(0.0, 0.9, 1e-8, 1.0, 1e-3), Error);        // bad order bounds
}

TEST_CASE("weights satisfy their algebraic identity and the kernel bound at x = 1") {
  const EsaQuadrature q = esa_params(0.3, 0.8, 1e-10, 1.0, 1.0 / 256.0);
  for (const double alpha : {0.3, 0.55, 0.8}) {
    const std::vector<double> w = esa_weights(q, alpha);
    REQUIRE(static_cast<int>(w.size()) == q.count());
    for (int k = 0; k < q.count(); ++k) {
      const int r = q.n_lo + 1 + k;
      CHECK(w[static_cast<std::size_t>(k)] * std::tgamma(alpha) / q.h ==
            doctest::Approx(std::exp(alpha * r * q.h)).epsilon(1e-12));
      CHECK(w[static_cast<std::size_t>(k)] > 0.0);
    }
    double recon = 0.0;
    for (int k = 0; k < q.count(); ++k)
      recon += w[static_cast<std::size_t>(k)] * std::exp(-q.lambda[static_cast<std::size_t>(k)]);
    CHECK(recon >= 1.0 - q.eps);
    CHECK(recon <= 1.0 + q.eps);
  }
  CHECK_THROWS_AS(esa_weights(q, 0.9), Error);  // outside construction bounds
}

TEST_CASE("kernel reconstruction over random samples") {
  const EsaQuadrature q = esa_params(0.4, 0.9, 1e-8, 1.0, 1.0 / 512.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pick_x(q.tau / q.horizon, 1.0);
  std::uniform_real_distribution<double> pick_a(0.4, 0.9);
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = pick_x(rng), alpha = pick_a(rng);
    const std::vector<double> w = esa_weights(q, alpha);
    double approx = 0.0;
    for (int k = 0; k < q.count(); ++k)
      approx += w[static_cast<std::size_t>(k)] * std::exp(-q.lambda[static_cast<std::size_t>(k)] * x);
    CHECK(std::abs(approx - std::pow(x, -alpha)) <= std::pow(x, -alpha) * q.eps);
  }
}

TEST_CASE("time-integrated factor matches quadrature and its small-exponent limit") {
  const EsaQuadrature q = esa_params(0.3, 0.8, 1e-10, 1.0, 1.0 / 64.0);
  for (int k = 0; k < q.count(); k += 7) {
    const double lam = q.lambda[static_cast<std::size_t>(k)];
    auto integrand = [&](double t) { return std::exp(-lam * (t - 0.0) / q.horizon); };
    // Integral over [tau, 2tau] of exp(-lam (t - t_{n-2})/T) with t_{n-2} = 0.
    const double expect = testing::integrate(integrand, q.tau, 2.0 * q.tau, 1e-16);
    CHECK(esa_b_coeff(3, k, q) == doctest::Approx(expect).epsilon(1e-12));
  }
  // lambda tau / T -> 0 makes the integrand 1, so the factor approaches tau.
  const double smallest = q.lambda.front() * q.tau / q.horizon;
  REQUIRE(smallest < 1e-5);
  CHECK(esa_b_coeff(3, 0, q) == doctest::Approx(q.tau).epsilon(1e-4));
  CHECK_THROWS_AS(esa_b_coeff(2, 0, q), Error);  // fast path starts at level 3
}

TEST_CASE("history state recurrence") {
  const EsaQuadrature q = esa_params(0.3, 0.8, 1e-10, 1.0, 1.0 / 64.0);
  EsaHistoryState state(q, 1, 1);
  CHECK(state.level() == 2);

  SUBCASE("zero state pushes to the gain times the increment") {
    const Grid2d delta(1, 1, 2.5);
    state.push(q, delta);
    CHECK(state.level() == 3);
    for (int k = 0; k < q.count(); ++k) {
      const double x = q.lambda[static_cast<std::size_t>(k)] * q.tau / q.horizon;
      const double gain = -std::expm1(-x) / x;
      CHECK(state.field(k)(0, 0) == doctest::Approx(gain * 2.5).epsilon(1e-13));
    }
  }

  SUBCASE("zero increments keep the state at zero") {
    const Grid2d zero(1, 1, 0.0);
    for (int p = 0; p < 5; ++p) state.push(q, zero);
    for (int k = 0; k < q.count(); ++k) CHECK(state.field(k)(0, 0) == 0.0);
  }

  SUBCASE("matches the piecewise-exact integral after several pushes") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    std::vector<double> deltas;
    for (int p = 0; p < 12; ++p) {
      deltas.push_back(pick(rng));
      state.push(q, Grid2d(1, 1, deltas.back()));
    }
    // After 12 pushes the state sits at level 14 and represents
    // int_0^{t_12} dPiv(s) exp(-lam (t_12 - s)/T) ds with dPiv = delta_m/tau
    // on (t_{m-1}, t_m).
    const int top = 12;
    for (int k = 0; k < q.count(); k += 11) {
      const double lam = q.lambda[static_cast<std::size_t>(k)];
      double exact = 0.0;
      for (int m = 1; m <= top; ++m) {
        const double hi = std::exp(-lam * (top - m) * q.tau / q.horizon);
        const double lo = std::exp(-lam * (top - m + 1) * q.tau / q.horizon);
        exact += deltas[static_cast<std::size_t>(m) - 1] / q.tau * (q.horizon / lam) * (hi - lo);
      }
      CHECK(state.field(k)(0, 0) == doctest::Approx(exact).epsilon(1e-12));
    }
  }

  SUBCASE("shape mismatch is a usage error") {
    CHECK_THROWS_AS(state.push(q, Grid2d(2, 2, 0.0)), Error);
  }
}

TEST_CASE("fast history sum") {
  const EsaQuadrature q = esa_params(0.3, 0.8, 1e-12, 1.0, 1.0 / 128.0);
  EsaHistoryState state(q, 1, 1);

  SUBCASE("constant history vanishes") {
    state.push(q, Grid2d(1, 1, 0.0));
    const double got = history_sum_fast(state, q, 1.0, 0.5, 4.0, 4.0, 4.0, 0.5);
    CHECK(got == doctest::Approx(0.0));
  }

  SUBCASE("level below 3 is a usage error") {
    CHECK_THROWS_AS(history_sum_fast(state, q, 1.0, 0.5, 0.0, 0.0, 0.0, 0.5), Error);
  }

  SUBCASE("agrees with the direct sum on a smooth sequence") {
    const int levels = 256;
    const double tau = 1.0 / levels;
    const EsaQuadrature qq = esa_params(0.3, 0.8, 1e-12, 1.0, tau);
    EsaHistoryState st(qq, 1, 1);
    auto v_of = [](double t) { return t * t; };
    std::vector<double> v(static_cast<std::size_t>(levels) + 1);
    for (int k = 0; k <= levels; ++k) v[static_cast<std::size_t>(k)] = v_of(k * tau);
    double worst = 0.0, scale = 0.0;
    for (int n = 3; n <= levels; ++n) {
      st.push(qq, Grid2d(1, 1, v[static_cast<std::size_t>(n) - 2] - v[static_cast<std::size_t>(n) - 3]));
      const double alpha = 0.55;
      const L1PlusRow row = l1plus_row(n, tau, alpha);
      const double direct = history_sum_direct({v.data(), static_cast<std::size_t>(n) + 1}, row);
      const double fast = history_sum_fast(st, qq, row.a[0], row.a[1],
                                           v[static_cast<std::size_t>(n) - 2],
                                           v[static_cast<std::size_t>(n) - 1],
                                           v[static_cast<std::size_t>(n)], alpha);
      worst = std::max(worst, std::abs(fast - direct));
      scale = std::max(scale, std::abs(direct));
    }
    CHECK(worst <= 1e-10 * scale);
  }
}

}  // TEST_SUITE
