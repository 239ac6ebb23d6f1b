#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scheme_oracle.hpp"
#include "votfmid/experiments.hpp"
#include "votfmid/schemes.hpp"

using namespace votfmid;

namespace {

SchemeConfig zero_config(SchemeKind kind, int levels, int m) {
  SchemeConfig cfg(kind, VariableOrder::preset(AlphaPreset::A1, 1.0), TimeGrid(1.0, levels),
                   SpaceGrid::unit_square(m, m));
  cfg.initial = [](double, double) { return 0.0; };
  cfg.source = [](double, double, double) { return 0.0; };
  return cfg;
}

}  // namespace

TEST_SUITE("schemes") {

TEST_CASE("gamma_n") {
  CHECK(gamma_n(1.0, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(gamma_n(0.125, 3.0, 0.0) == doctest::Approx(0.125 * 3.0 / 2.0));
  // Frozen cross-check from a 30-digit evaluation.
  const double tau = std::pow(2.0, -5);
  CHECK(gamma_n(tau, 1.0, l1plus_coeff(1, tau, 0.5)) ==
        doctest::Approx(0.013791055020347042).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_n(0.0, 1.0, 1.0), Error);
}

TEST_CASE("init_dofs") {
  SchemeConfig cfg = zero_config(SchemeKind::AdiQscL1p, 4, 16);
  CHECK(init_dofs(cfg).max_abs() == 0.0);

  cfg.initial = [](double, double) { return 1.0; };
  const Grid2d ones = init_dofs(cfg);
  for (double x : ones.v) CHECK(x == doctest::Approx(1.0).epsilon(1e-13));

  cfg.initial = [](double x, double y) { return std::sin(x) * std::sin(y); };
  const Grid2d c = init_dofs(cfg);
  Grid2d th;
  apply_value_xy(cfg.space, c, th);
  for (int i = 0; i < cfg.space.nx(); ++i)
    for (int j = 0; j < cfg.space.ny(); ++j)
      CHECK(th(i, j) == doctest::Approx(std::sin(cfg.space.colloc_x(i)) *
                                        std::sin(cfg.space.colloc_y(j)))
                            .epsilon(1e-12));
}

TEST_CASE("zero data stays zero for every scheme") {
  for (const SchemeKind kind :
       {SchemeKind::QscL1p, SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p,
        SchemeKind::OptAdiQscL1p, SchemeKind::OptAdiQscFl1p}) {
    const RunResult res = run(zero_config(kind, 5, 8));
    CHECK(res.final_dofs.max_abs() == 0.0);
  }
}

TEST_CASE("zero levels returns the initial coefficients") {
  SchemeConfig cfg = zero_config(SchemeKind::AdiQscL1p, 0, 8);
  cfg.initial = [](double x, double y) { return x + y; };
  const RunResult res = run(cfg);
  CHECK(max_abs_diff(res.final_dofs, init_dofs(cfg)) == 0.0);
}

TEST_CASE("full-scheme DOF cap directs to the ADI kinds") {
  SchemeConfig cfg = zero_config(SchemeKind::QscL1p, 2, 200);
  CHECK_THROWS_WITH_AS(run(cfg), doctest::Contains("ADI"), Error);
}

TEST_CASE("optimal kinds require at least six cells") {
  SchemeConfig cfg = zero_config(SchemeKind::OptAdiQscL1p, 2, 4);
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("per-step solutions match the assembled-system oracle") {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, 1.0);
  for (const SchemeKind kind : {SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p,
                                SchemeKind::OptAdiQscL1p, SchemeKind::OptAdiQscFl1p}) {
    const SchemeConfig cfg = make_config(p, vo, kind, 4, 8, 8);
    Stepper stepper(cfg, true);
    testing::AssembledOracle oracle(cfg);
    while (stepper.level() < cfg.time.levels) {
      const int n = stepper.level() + 1;
      stepper.advance();
      const Grid2d expect = oracle.step(stepper.trajectory(), n);
      CHECK(max_abs_diff(expect, stepper.trajectory()[static_cast<std::size_t>(n)]) <= 1e-10);
    }
  }
}

TEST_CASE("snapshot times must be grid nodes") {
  SchemeConfig cfg = zero_config(SchemeKind::AdiQscL1p, 8, 8);
  RunOptions opts;
  opts.snapshot_times = {0.3};
  CHECK_THROWS_AS(run(cfg, opts), Error);
  opts.snapshot_times = {0.25, 1.0};
  const RunResult res = run(cfg, opts);
  CHECK(res.snapshots.size() == 2);
}

TEST_CASE("residual check flags corrupted trajectories") {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A2, 1.0);
  const SchemeConfig cfg = make_config(p, vo, SchemeKind::AdiQscL1p, 5, 8, 8);
  RunOptions opts;
  opts.keep_trajectory = true;
  RunResult res = run(cfg, opts);
  CHECK(residual_check(cfg, res.trajectory) <= 1e-11);

  res.trajectory[3](4, 4) += 1e-4;  // fault injection
  CHECK(residual_check(cfg, res.trajectory) > 1e-6);
}

TEST_CASE("exact zero solution has zero residual") {
  SchemeConfig cfg = zero_config(SchemeKind::AdiQscFl1p, 6, 8);
  RunOptions opts;
  opts.keep_trajectory = true;
  const RunResult res = run(cfg, opts);
  CHECK(residual_check(cfg, res.trajectory) == doctest::Approx(0.0));
}

}  // TEST_SUITE
