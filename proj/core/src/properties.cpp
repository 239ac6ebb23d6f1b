#include "votfmid/properties.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "votfmid/experiments.hpp"

namespace votfmid {

bool row_a_monotone(const L1PlusRow& row) {
  for (const double a : row.a)
    if (!(a > 0.0)) return false;
  for (std::size_t j = 2; j < row.a.size(); ++j)
    if (!(row.a[j - 1] > row.a[j])) return false;
  return true;
}

bool row_b_monotone(const L1PlusRow& row) {
  for (const double b : row.b)
    if (!(b > 0.0)) return false;
  for (std::size_t j = 1; j < row.b.size(); ++j)
    if (!(row.b[j - 1] > row.b[j])) return false;
  return true;
}

namespace {

using Suite = std::function<void(PropertyResult&)>;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check(PropertyResult& r, bool cond, const std::string& detail) {
  if (!cond && r.pass) {
    r.pass = false;
    r.detail = detail;
  }
}

// --- fractional_time ---------------------------------------------------------

void suite_l1plus_monotone(PropertyResult& r) {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> pick_n(1, 64);
  std::uniform_real_distribution<double> pick_tau(1e-3, 1.0);
  std::uniform_real_distribution<double> pick_alpha(0.05, 0.95);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = pick_n(rng);
    const L1PlusRow row = l1plus_row(n, pick_tau(rng), pick_alpha(rng));
    check(r, row_a_monotone(row), "a-row monotonicity failed at trial " + std::to_string(trial));
    check(r, row_b_monotone(row), "b-row monotonicity failed at trial " + std::to_string(trial));
    if (!r.pass) return;
  }
}

void suite_l1plus_tail_bound(PropertyResult& r) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick_n(2, 96);
  std::uniform_real_distribution<double> pick_tau(1e-3, 1.0);
  std::uniform_real_distribution<double> pick_alpha(0.05, 0.95);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = pick_n(rng);
    const double tau = pick_tau(rng);
    const double alpha = pick_alpha(rng);
    const L1PlusRow row = l1plus_row(n, tau, alpha);
    const double horizon = n * tau;
    const double bound = std::pow(horizon, -alpha) / std::tgamma(1.0 - alpha);
    check(r, row.a.back() >= bound * (1.0 - 1e-12),
          "tail weight below kernel bound at trial " + std::to_string(trial));
    if (!r.pass) return;
  }
}

void suite_l1plus_oracle(PropertyResult& r) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> pick_j(1, 40);
  std::uniform_real_distribution<double> pick_tau(1.0 / 64.0, 1.0);
  std::uniform_real_distribution<double> pick_alpha(0.05, 0.95);
  for (int trial = 0; trial < 120; ++trial) {
    const int j = pick_j(rng);
    const double tau = pick_tau(rng);
    const double alpha = pick_alpha(rng);
    const double closed = l1plus_coeff(j, tau, alpha);
    const double quad = coeff_quadrature_oracle(j, tau, alpha, 1e-11);
    check(r, std::abs(closed - quad) <= 1e-9 * std::abs(closed),
          "weight disagrees with quadrature at j=" + std::to_string(j) +
              " tau=" + num(tau) + " alpha=" + num(alpha) + " rel=" +
              num(std::abs(closed - quad) / std::abs(closed)));
    if (!r.pass) return;
  }
}

void suite_l1plus_sum_bounded(PropertyResult& r) {
  // Running sum of the leading scheme weights b_k^{(k)} stays bounded as the
  // grid refines with the horizon fixed.
  double prev_sum = 0.0;
  double last_ratio = 0.0;
  for (int levels = 16; levels <= 1024; levels *= 2) {
    const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, 1.0);
    const TimeGrid grid(1.0, levels);
    const std::vector<double> amid = midpoint_orders(vo, grid);
    double sum = 0.0;
    for (int k = 1; k <= levels; ++k) {
      const double a1 = l1plus_coeff(1, grid.tau, amid[static_cast<std::size_t>(k) - 1]);
      if (k == 1) {
        sum += 1.0 + grid.tau * a1;
      } else {
        sum += grid.tau * l1plus_coeff(k, grid.tau, amid[static_cast<std::size_t>(k) - 1]);
      }
    }
    if (levels > 16) last_ratio = sum / prev_sum;
    prev_sum = sum;
  }
  check(r, last_ratio < 1.05 && last_ratio > 0.5,
        "running weight sum not settling: last doubling ratio " + num(last_ratio));
}

void suite_l1plus_linear_exact(PropertyResult& r) {
  // Piecewise-linear interpolation is exact for linear sequences, so the
  // discrete value must match the averaged derivative of c*t exactly.
  const double c = 1.7;
  for (const double alpha : {0.2, 0.5, 0.8}) {
    const int n = 48;
    const double tau = 1.0 / 64.0;
    const L1PlusRow row = l1plus_row(n, tau, alpha);
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = c * k * tau;
    const double got = history_sum_direct(v, row);
    const double tn = n * tau, tn1 = (n - 1) * tau;
    const double expect =
        c * (std::pow(tn, 2.0 - alpha) - std::pow(tn1, 2.0 - alpha)) /
        (tau * std::tgamma(3.0 - alpha));
    check(r, std::abs(got - expect) <= 1e-10 * std::abs(expect),
          "linear sequence mismatch at alpha=" + num(alpha));
  }
}

// --- esa_fast ----------------------------------------------------------------

void suite_esa_kernel_bound(PropertyResult& r) {
  std::mt19937 rng(2024);
  for (const double eps : {1e-8, 1e-12}) {
    const double alpha_lo = 0.4, alpha_hi = 0.9, horizon = 1.0, tau = 1.0 / 1024.0;
    const EsaQuadrature q = esa_params(alpha_lo, alpha_hi, eps, horizon, tau);
    std::uniform_real_distribution<double> pick_x(tau / horizon, 1.0);
    std::uniform_real_distribution<double> pick_alpha(alpha_lo, alpha_hi);
    for (int trial = 0; trial < 10000; ++trial) {
      const double x = pick_x(rng);
      const double alpha = pick_alpha(rng);
      const std::vector<double> w = esa_weights(q, alpha);
      double approx = 0.0;
      for (int k = 0; k < q.count(); ++k)
        approx += w[static_cast<std::size_t>(k)] *
                  std::exp(-q.lambda[static_cast<std::size_t>(k)] * x);
      const double exact = std::pow(x, -alpha);
      check(r, std::abs(exact - approx) <= exact * eps,
            "kernel bound violated at x=" + num(x) + " alpha=" + num(alpha) +
                " eps=" + num(eps));
      if (!r.pass) return;
    }
  }
}

void suite_esa_fast_vs_direct(PropertyResult& r) {
  const double horizon = 1.0;
  const int levels = 1024;
  const double tau = horizon / levels;
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, horizon);
  const TimeGrid grid(horizon, levels);
  const std::vector<double> amid = midpoint_orders(vo, grid);
  const EsaQuadrature q = esa_params(vo.lower(), vo.upper(), 1e-12, horizon, tau);

  auto smooth = [](double t) { return t * t + 0.25 * std::sin(3.0 * t); };
  std::vector<double> v(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) v[static_cast<std::size_t>(k)] = smooth(k * tau);

  EsaHistoryState state(q, 1, 1);
  double worst = 0.0;
  for (int n = 3; n <= levels; ++n) {
    Grid2d delta(1, 1, v[static_cast<std::size_t>(n) - 2] - v[static_cast<std::size_t>(n) - 3]);
    state.push(q, delta);
    const double alpha = amid[static_cast<std::size_t>(n) - 1];
    const L1PlusRow row = l1plus_row(n, tau, alpha);
    const double direct =
        history_sum_direct({v.data(), static_cast<std::size_t>(n) + 1}, row);
    const double fast = history_sum_fast(state, q, row.a[0], row.a[1],
                                         v[static_cast<std::size_t>(n) - 2],
                                         v[static_cast<std::size_t>(n) - 1],
                                         v[static_cast<std::size_t>(n)], alpha);
    worst = std::max(worst, std::abs(fast - direct) / std::max(1.0, std::abs(direct)));
  }
  check(r, worst <= 1e-9, "fast/direct history mismatch: worst rel " + num(worst));
}

void suite_esa_memory(PropertyResult& r) {
  const EsaQuadrature q = esa_params(0.3, 0.8, 1e-10, 1.0, 1.0 / 256.0);
  EsaHistoryState state(q, 6, 7);
  const std::size_t before = state.memory_doubles();
  const Grid2d delta(6, 7, 0.5);
  for (int k = 0; k < 100; ++k) state.push(q, delta);
  check(r, state.memory_doubles() == before,
        "state memory grew with pushes");
  const std::size_t expect = static_cast<std::size_t>(q.count()) * 42u;
  check(r, before >= expect && before <= expect + 4u * static_cast<std::size_t>(q.count()),
        "state memory is not ~count*dof: " + std::to_string(before));
}

void suite_esa_work_scaling(PropertyResult& r) {
  // Doubling the level count must grow fast-history work by at most 2.6x
  // while the direct path quadruples (deterministic op counters).
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, 1.0);
  std::uint64_t fast_prev = 0, direct_prev = 0;
  for (const int levels : {128, 256}) {
    const RunResult fast = run(make_config(p, vo, SchemeKind::AdiQscFl1p, levels, 8, 8, 1e-10));
    const RunResult direct = run(make_config(p, vo, SchemeKind::AdiQscL1p, levels, 8, 8));
    if (fast_prev != 0) {
      const double fr = static_cast<double>(fast.history_work) / fast_prev;
      const double dr = static_cast<double>(direct.history_work) / direct_prev;
      check(r, fr <= 2.6, "fast work doubling ratio " + num(fr) + " > 2.6");
      check(r, dr >= 3.0 && dr <= 5.0, "direct work doubling ratio " + num(dr) + " not in [3,5]");
    }
    fast_prev = fast.history_work;
    direct_prev = direct.history_work;
  }
}

// --- qsc_space ---------------------------------------------------------------

void suite_qsc_value_operator_spd(PropertyResult& r) {
  // The similarity transform with diag(2,1,...,1,2) symmetrizes the
  // collocation-value matrix; its smallest eigenvalue stays positive.
  for (int m = 2; m <= 64; m += (m < 16 ? 1 : 7)) {
    const int n = m + 2;
    const std::vector<double> q = value_matrix_1d(m);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      const double si = (i == 0 || i == n - 1) ? 2.0 : 1.0;
      for (int j = 0; j < n; ++j) {
        const double sj = (j == 0 || j == n - 1) ? 2.0 : 1.0;
        a(i, j) = q[static_cast<std::size_t>(i) * n + j] * sj / si;
      }
    }
    check(r, (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-15,
          "similarity transform not symmetric at m=" + std::to_string(m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
    check(r, es.eigenvalues().minCoeff() > 0.0,
          "value-operator similarity not positive definite at m=" + std::to_string(m));
    if (!r.pass) return;
  }
}

void suite_qsc_form_bounds(PropertyResult& r) {
  // (3/16)||v||^2 <= (value_x v, v) <= ||v||^2 for fields vanishing on the
  // boundary index set, and the same along y.
  std::mt19937 rng(55);
  std::normal_distribution<double> gauss;
  const SpaceGrid g = SpaceGrid::unit_square(9, 7);
  Grid2d v = g.zeros(), tv;
  for (int trial = 0; trial < 500; ++trial) {
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) v(i, j) = g.on_boundary(i, j) ? 0.0 : gauss(rng);
    const double nn = inner_product(g, v, v);
    apply_value_x(g, v, tv);
    const double qx = inner_product(g, tv, v);
    apply_value_y(g, v, tv);
    const double qy = inner_product(g, tv, v);
    check(r, qx >= 3.0 / 16.0 * nn - 1e-13 && qx <= nn + 1e-13,
          "x-form bound violated at trial " + std::to_string(trial));
    check(r, qy >= 3.0 / 16.0 * nn - 1e-13 && qy <= nn + 1e-13,
          "y-form bound violated at trial " + std::to_string(trial));
    if (!r.pass) return;
  }
}

void suite_qsc_diff_identity(PropertyResult& r) {
  std::mt19937 rng(77);
  std::normal_distribution<double> gauss;
  const SpaceGrid g = SpaceGrid::unit_square(11, 6);
  Grid2d c = g.zeros();
  for (double& x : c.v) x = gauss(rng);
  Grid2d second, diff;
  apply_second_x(g, c, second);
  apply_diff_x(g, c, diff);
  for (int i = 1; i <= g.mx; ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double composed = (diff(i + 1, j) - diff(i, j)) / g.dx;
      check(r, std::abs(composed - second(i, j)) <= 1e-14 * std::max(1.0, std::abs(second(i, j))),
            "second difference does not match composed first differences");
    }
}

void suite_qsc_stencil_oracle(PropertyResult& r) {
  std::mt19937 rng(99);
  std::normal_distribution<double> gauss;
  const SpaceGrid g(0.0, 2.0, -1.0, 1.0, 8, 7);
  Grid2d c = g.zeros();
  for (double& x : c.v) x = gauss(rng);

  struct Case {
    const char* name;
    void (*apply)(const SpaceGrid&, const Grid2d&, Grid2d&);
    std::vector<double> mat;
    bool along_x;
  };
  const std::vector<Case> cases = {
      {"value_x", apply_value_x, value_matrix_1d(g.mx), true},
      {"second_x", apply_second_x, second_matrix_1d(g.mx, g.dx), true},
      {"fourth_x", apply_fourth_x, fourth_matrix_1d(g.mx, g.dx), true},
      {"value_y", apply_value_y, value_matrix_1d(g.my), false},
      {"second_y", apply_second_y, second_matrix_1d(g.my, g.dy), false},
      {"fourth_y", apply_fourth_y, fourth_matrix_1d(g.my, g.dy), false},
  };
  Grid2d got;
  for (const Case& cs : cases) {
    cs.apply(g, c, got);
    const int n = cs.along_x ? g.nx() : g.ny();
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        double expect = 0.0;
        if (cs.along_x) {
          for (int k = 0; k < n; ++k)
            expect += cs.mat[static_cast<std::size_t>(i) * n + k] * c(k, j);
        } else {
          for (int k = 0; k < n; ++k)
            expect += cs.mat[static_cast<std::size_t>(j) * n + k] * c(i, k);
        }
        check(r, std::abs(expect - got(i, j)) <= 1e-13 * std::max(1.0, std::abs(expect)),
              std::string(cs.name) + " disagrees with its dense matrix");
      }
    if (!r.pass) return;
  }
}

void suite_qsc_fourth_cubic(PropertyResult& r) {
  const SpaceGrid g = SpaceGrid::unit_square(12, 12);
  Grid2d c = g.zeros(), out;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double k = i;
      c(i, j) = k * k * k - 2.0 * k * k + 0.5 * k + 3.0;
    }
  apply_fourth_x(g, c, out);
  for (int i = 3; i <= g.mx - 2; ++i)
    for (int j = 0; j < g.ny(); ++j)
      check(r, std::abs(out(i, j)) <= 1e-9,
            "interior fourth-difference row does not annihilate cubics");
}

void suite_qsc_interp_error(PropertyResult& r) {
  using std::numbers::pi;
  auto w = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  auto wxx = [](double x, double y) { return -pi * pi * std::sin(pi * x) * std::sin(pi * y); };
  const double w4max = pi * pi * pi * pi;  // max |d^4 w / dx^4|
  for (const int m : {32, 64}) {
    const SpaceGrid g = SpaceGrid::unit_square(m, m);
    const Grid2d c = interpolate_dofs(g, g.sample(w));
    Grid2d vy, sxy;
    apply_value_y(g, c, vy);
    apply_second_x(g, vy, sxy);
    double worst = 0.0;
    for (int i = 1; i <= g.mx; ++i)
      for (int j = 0; j < g.ny(); ++j)
        worst = std::max(worst, std::abs(sxy(i, j) - wxx(g.colloc_x(i), g.colloc_y(j))));
    const double bound = g.dx * g.dx / 12.0 * w4max * 1.25;
    check(r, worst <= bound,
          "interpolation second-derivative error " + num(worst) + " above bound " + num(bound) +
              " at m=" + std::to_string(m));
  }
}

// --- schemes -----------------------------------------------------------------

void suite_scheme_stability(PropertyResult& r) {
  using std::numbers::pi;
  for (const double tau : {0.25, 1.0 / 64.0}) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
      const VariableOrder vo = VariableOrder::preset(AlphaPreset::A0, 1.0);
      const int levels = static_cast<int>(std::lround(1.0 / tau));
      SchemeConfig cfg(SchemeKind::QscL1p, vo, TimeGrid(1.0, levels),
                       SpaceGrid::unit_square(16, 16));
      cfg.kappa = kappa;
      cfg.initial = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
      cfg.source = [](double, double, double) { return 0.0; };
      RunOptions opts;
      opts.keep_trajectory = true;
      const RunResult res = run(cfg, opts);

      const SpaceGrid& g = cfg.space;
      auto functional = [&](const Grid2d& c, double weight) {
        Grid2d th, tx, ty;
        apply_value_xy(g, c, th);
        apply_value_y(g, c, ty);
        apply_value_x(g, c, tx);
        const double n0 = l2_norm(g, th);
        const double sx = seminorm_1x(g, ty);
        const double sy = seminorm_1y(g, tx);
        return n0 * n0 + weight * tau * kappa * (sx * sx + sy * sy);
      };
      const double initial = functional(res.trajectory[0], 0.5);
      for (int n = 1; n <= levels; ++n) {
        const double now = functional(res.trajectory[static_cast<std::size_t>(n)], 3.0 / 32.0);
        check(r, now <= 10.0 * initial,
              "stability functional grew beyond 10x at tau=" + num(tau) +
                  " kappa=" + num(kappa) + " level=" + std::to_string(n));
        if (!r.pass) return;
      }
    }
  }
}

void suite_scheme_boundary_identity(PropertyResult& r) {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A2, 1.0);
  for (const SchemeKind kind :
       {SchemeKind::QscL1p, SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p,
        SchemeKind::OptAdiQscL1p, SchemeKind::OptAdiQscFl1p}) {
    RunOptions opts;
    opts.keep_trajectory = true;
    const SchemeConfig cfg = make_config(p, vo, kind, 6, 8, 8);
    const RunResult res = run(cfg, opts);
    for (int n = 1; n <= 6; ++n) {
      Grid2d th;
      apply_value_xy(cfg.space, res.trajectory[static_cast<std::size_t>(n)], th);
      double worst = 0.0;
      for (int i = 0; i < cfg.space.nx(); ++i)
        for (int j = 0; j < cfg.space.ny(); ++j)
          if (cfg.space.on_boundary(i, j)) worst = std::max(worst, std::abs(th(i, j)));
      check(r, worst <= 1e-10,
            std::string("boundary trace ") + num(worst) + " for " + scheme_name(kind) +
                " at level " + std::to_string(n));
    }
  }
}

void suite_scheme_residual(PropertyResult& r) {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, 1.0);
  for (const SchemeKind kind :
       {SchemeKind::QscL1p, SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p,
        SchemeKind::OptAdiQscL1p, SchemeKind::OptAdiQscFl1p}) {
    RunOptions opts;
    opts.keep_trajectory = true;
    const SchemeConfig cfg = make_config(p, vo, kind, 6, 8, 8);
    const RunResult res = run(cfg, opts);
    const double defect = residual_check(cfg, res.trajectory);
    check(r, defect <= 1e-11,
          std::string("defining-equation residual ") + num(defect) + " for " +
              scheme_name(kind));
  }
}

void suite_scheme_fast_direct(PropertyResult& r) {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A1, 1.0);
  const double eps = 1e-12;
  {
    const RunResult direct = run(make_config(p, vo, SchemeKind::AdiQscL1p, 64, 16, 16));
    const RunResult fast = run(make_config(p, vo, SchemeKind::AdiQscFl1p, 64, 16, 16, eps));
    const double diff = max_abs_diff(direct.final_dofs, fast.final_dofs);
    check(r, diff <= 1e3 * eps, "plain fast/direct differ by " + num(diff));
  }
  {
    const RunResult direct = run(make_config(p, vo, SchemeKind::OptAdiQscL1p, 64, 16, 16));
    const RunResult fast = run(make_config(p, vo, SchemeKind::OptAdiQscFl1p, 64, 16, 16, eps));
    const double diff = max_abs_diff(direct.final_dofs, fast.final_dofs);
    check(r, diff <= 1e3 * eps, "optimal fast/direct differ by " + num(diff));
  }
}

void suite_scheme_deterministic(PropertyResult& r) {
  const Problem p = example62(true);
  const VariableOrder vo = VariableOrder::preset(AlphaPreset::A3, 1.0);
  const SchemeConfig cfg = make_config(p, vo, SchemeKind::AdiQscFl1p, 32, 12, 12, 1e-10);
  const RunResult first = run(cfg);
  const RunResult second = run(cfg);
  check(r, first.final_dofs.v == second.final_dofs.v, "repeated runs are not bitwise equal");
}

// --- linalg ------------------------------------------------------------------

void suite_linalg_dominance(PropertyResult& r) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> pick_gamma(0.0, 2.0);
  std::uniform_real_distribution<double> pick_dx(1.0 / 128.0, 0.5);
  std::uniform_int_distribution<int> pick_m(2, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const double gamma = pick_gamma(rng);
    const double dx = pick_dx(rng);
    const int m = pick_m(rng);
    const double e = gamma / (dx * dx);
    const double diag = 0.75 + 2.0 * e;
    const double off = 2.0 * std::abs(0.125 - e);
    check(r, diag > off, "sweep operator lost diagonal dominance at trial " + std::to_string(trial));
    (void)m;
  }
}

struct NamedSuite {
  const char* name;
  Suite fn;
};

const NamedSuite kSuites[] = {
    {"l1plus.monotone_weights", suite_l1plus_monotone},
    {"l1plus.tail_lower_bound", suite_l1plus_tail_bound},
    {"l1plus.quadrature_oracle", suite_l1plus_oracle},
    {"l1plus.weight_sum_bounded", suite_l1plus_sum_bounded},
    {"l1plus.linear_sequence_exact", suite_l1plus_linear_exact},
    {"esa.kernel_relative_bound", suite_esa_kernel_bound},
    {"esa.fast_vs_direct_scalar", suite_esa_fast_vs_direct},
    {"esa.state_memory_constant", suite_esa_memory},
    {"esa.work_scaling", suite_esa_work_scaling},
    {"qsc.value_operator_spd", suite_qsc_value_operator_spd},
    {"qsc.quadratic_form_bounds", suite_qsc_form_bounds},
    {"qsc.diff_composition_identity", suite_qsc_diff_identity},
    {"qsc.stencil_dense_oracle", suite_qsc_stencil_oracle},
    {"qsc.fourth_annihilates_cubics", suite_qsc_fourth_cubic},
    {"qsc.interp_second_deriv_constant", suite_qsc_interp_error},
    {"schemes.stability_functional", suite_scheme_stability},
    {"schemes.boundary_identity", suite_scheme_boundary_identity},
    {"schemes.defining_equation_residual", suite_scheme_residual},
    {"schemes.fast_direct_agreement", suite_scheme_fast_direct},
    {"schemes.bitwise_repeatable", suite_scheme_deterministic},
    {"linalg.sweep_diagonal_dominance", suite_linalg_dominance},
};

}  // namespace

std::vector<PropertyResult> run_property_suites(const std::string& filter) {
  std::vector<PropertyResult> results;
  for (const NamedSuite& s : kSuites) {
    if (!filter.empty() && std::string(s.name).find(filter) == std::string::npos) continue;
    PropertyResult r;
    r.name = s.name;
    r.pass = true;
    try {
      s.fn(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace votfmid
