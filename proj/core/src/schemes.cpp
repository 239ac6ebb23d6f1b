#include "votfmid/schemes.hpp"

#include <chrono>
#include <cmath>

#include "votfmid/parallel.hpp"

namespace votfmid {

bool is_fast(SchemeKind k) {
  return k == SchemeKind::AdiQscFl1p || k == SchemeKind::OptAdiQscFl1p;
}
bool is_optimal(SchemeKind k) {
  return k == SchemeKind::OptAdiQscL1p || k == SchemeKind::OptAdiQscFl1p;
}
bool is_adi(SchemeKind k) { return k != SchemeKind::QscL1p; }

const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::QscL1p: return "qsc_l1p";
    case SchemeKind::AdiQscL1p: return "adi_qsc_l1p";
    case SchemeKind::AdiQscFl1p: return "adi_qsc_fl1p";
    case SchemeKind::OptAdiQscL1p: return "opt_adi_qsc_l1p";
    case SchemeKind::OptAdiQscFl1p: return "opt_adi_qsc_fl1p";
  }
  return "?";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
  for (SchemeKind k : {SchemeKind::QscL1p, SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p,
                       SchemeKind::OptAdiQscL1p, SchemeKind::OptAdiQscFl1p})
    if (name == scheme_name(k)) return k;
  return std::nullopt;
}

double gamma_n(double tau, double kappa, double a1) {
  require(tau > 0.0 && kappa > 0.0 && a1 >= 0.0, ErrorKind::Domain,
          "gamma_n: inputs must be positive");
  return tau * kappa / (2.0 * (1.0 + tau * a1));
}

namespace {

constexpr std::size_t kFullSchemeDofCap = 1u << 14;

}  // namespace

void SchemeConfig::validate() const {
  require(kappa > 0.0, ErrorKind::Config, "scheme config: kappa must be positive");
  require(static_cast<bool>(initial), ErrorKind::Config, "scheme config: initial function not set");
  require(static_cast<bool>(source) || static_cast<bool>(source_grid), ErrorKind::Config,
          "scheme config: source function not set");
  require(std::abs(alpha.horizon() - time.horizon) <= 1e-12 * time.horizon, ErrorKind::Config,
          "scheme config: order function and time grid disagree on the horizon");
  if (is_optimal(kind))
    require(space.mx >= 6 && space.my >= 6, ErrorKind::Config,
            "scheme config: optimal schemes require Mx >= 6 and My >= 6");
  if (kind == SchemeKind::QscL1p)
    require(space.dof_count() <= kFullSchemeDofCap, ErrorKind::Config,
            "scheme config: qsc_l1p is the small-problem/oracle path (DOF count above 2^14); "
            "use an ADI scheme");
  if (is_fast(kind) && time.levels >= 3)
    esa_params(alpha.lower(), alpha.upper(), esa_eps, time.horizon, time.tau);  // throws if invalid
}

Grid2d init_dofs(const SchemeConfig& cfg) {
  return interpolate_dofs(cfg.space, cfg.space.sample(cfg.initial));
}

namespace {

TridiagonalSystem sweep_tridiagonal(int m, double dx, double gamma) {
  const int n = m + 2;
  TridiagonalSystem s;
  s.lower.assign(static_cast<std::size_t>(n) - 1, 0.0);
  s.diag.assign(static_cast<std::size_t>(n), 0.0);
  s.upper.assign(static_cast<std::size_t>(n) - 1, 0.0);
  const double e = gamma / (dx * dx);
  s.diag[0] = 0.5;
  s.upper[0] = 0.5;
  for (int i = 1; i < n - 1; ++i) {
    s.lower[static_cast<std::size_t>(i) - 1] = 0.125 - e;
    s.diag[static_cast<std::size_t>(i)] = 0.75 + 2.0 * e;
    s.upper[static_cast<std::size_t>(i)] = 0.125 - e;
  }
  s.lower[static_cast<std::size_t>(n) - 2] = 0.5;
  s.diag[static_cast<std::size_t>(n) - 1] = 0.5;
  s.factor();
  return s;
}

BandedSystem sweep_banded(int m, double dx, double gamma) {
  const int n = m + 2;
  const std::vector<double> value = value_matrix_1d(m);
  const std::vector<double> second = second_matrix_1d(m, dx);
  const std::vector<double> fourth = fourth_matrix_1d(m, dx);
  BandedSystem sys(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 4); j <= std::min(n - 1, i + 4); ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      sys.at(i, j) = value[k] - gamma * (second[k] + fourth[k]);
    }
  sys.factor();
  return sys;
}

}  // namespace

Stepper::Stepper(SchemeConfig cfg, bool keep_trajectory)
    : cfg_(std::move(cfg)), keep_trajectory_(keep_trajectory) {
  cfg_.validate();
  amid_ = midpoint_orders(cfg_.alpha, cfg_.time);
  if (!cfg_.source_grid) {
    const auto pointwise = cfg_.source;
    cfg_.source_grid = [pointwise](double t, const SpaceGrid& g, Grid2d& out) {
      if (!same_shape(out, Grid2d(g.nx(), g.ny()))) out = Grid2d(g.nx(), g.ny());
      for (int i = 0; i < g.nx(); ++i) {
        const double x = g.colloc_x(i);
        for (int j = 0; j < g.ny(); ++j) out(i, j) = pointwise(x, g.colloc_y(j), t);
      }
    };
  }

  cur_ = init_dofs(cfg_);
  const SpaceGrid& g = cfg_.space;
  prev_ = g.zeros();
  prev2_ = g.zeros();
  th_prev_ = g.zeros();
  t1_ = g.zeros();
  t2_ = g.zeros();
  t3_ = g.zeros();
  rhs_ = g.zeros();
  fgrid_ = g.zeros();
  hsum_ = g.zeros();
  apply_value_xy(g, cur_, th_cur_);

  if (is_fast(cfg_.kind) && cfg_.time.levels >= 3) {
    esa_ = esa_params(cfg_.alpha.lower(), cfg_.alpha.upper(), cfg_.esa_eps, cfg_.time.horizon,
                      cfg_.time.tau);
    esa_state_.emplace(*esa_, g.nx(), g.ny());
    esa_b_.resize(static_cast<std::size_t>(esa_->count()));
    for (int r = 0; r < esa_->count(); ++r)
      esa_b_[static_cast<std::size_t>(r)] = esa_b_coeff(3, r, *esa_);
  }
  if (keep_trajectory_) trajectory_.push_back(cur_);
}

const std::vector<Grid2d>& Stepper::trajectory() const {
  require(keep_trajectory_, ErrorKind::Usage, "Stepper: trajectory was not retained");
  return trajectory_;
}

void Stepper::apply_lx(const Grid2d& in, Grid2d& out) {
  apply_second_x(cfg_.space, in, out);
  if (is_optimal(cfg_.kind)) {
    apply_fourth_x(cfg_.space, in, t3_);
    axpy(1.0, t3_, out);
  }
}

void Stepper::apply_ly(const Grid2d& in, Grid2d& out) {
  apply_second_y(cfg_.space, in, out);
  if (is_optimal(cfg_.kind)) {
    apply_fourth_y(cfg_.space, in, t3_);
    axpy(1.0, t3_, out);
  }
}

void Stepper::source_mid(int lv, Grid2d& out) {
  cfg_.source_grid(cfg_.time.midpoint(lv), cfg_.space, out);
}

void Stepper::sweep_x(double gamma, Grid2d& field) {
  const SpaceGrid& g = cfg_.space;
  const int nx = g.nx(), ny = g.ny();
  if (is_optimal(cfg_.kind)) {
    const BandedSystem sys = sweep_banded(g.mx, g.dx, gamma);
    parallel_for(ny, [&](int jb, int je) {
      std::vector<double> line(static_cast<std::size_t>(nx));
      for (int j = jb; j < je; ++j) {
        for (int i = 0; i < nx; ++i) line[static_cast<std::size_t>(i)] = field(i, j);
        sys.solve(line);
        for (int i = 0; i < nx; ++i) field(i, j) = line[static_cast<std::size_t>(i)];
      }
    });
  } else {
    const TridiagonalSystem sys = sweep_tridiagonal(g.mx, g.dx, gamma);
    parallel_for(ny, [&](int jb, int je) {
      std::vector<double> line(static_cast<std::size_t>(nx));
      for (int j = jb; j < je; ++j) {
        for (int i = 0; i < nx; ++i) line[static_cast<std::size_t>(i)] = field(i, j);
        sys.solve(line);
        for (int i = 0; i < nx; ++i) field(i, j) = line[static_cast<std::size_t>(i)];
      }
    });
  }
}

void Stepper::sweep_y(double gamma, Grid2d& field) {
  const SpaceGrid& g = cfg_.space;
  const int nx = g.nx(), ny = g.ny();
  if (is_optimal(cfg_.kind)) {
    const BandedSystem sys = sweep_banded(g.my, g.dy, gamma);
    parallel_for(nx, [&](int ib, int ie) {
      for (int i = ib; i < ie; ++i)
        sys.solve({&field.v[static_cast<std::size_t>(i) * ny], static_cast<std::size_t>(ny)});
    });
  } else {
    const TridiagonalSystem sys = sweep_tridiagonal(g.my, g.dy, gamma);
    parallel_for(nx, [&](int ib, int ie) {
      for (int i = ib; i < ie; ++i)
        sys.solve({&field.v[static_cast<std::size_t>(i) * ny], static_cast<std::size_t>(ny)});
    });
  }
}

void Stepper::direct_history_sum(int lv, const std::vector<double>& a, Grid2d& out) {
  out.set_zero();
  const int dof = static_cast<int>(out.size());
  parallel_for(dof, [&](int lo, int hi) {
    for (int k = 1; k <= lv - 1; ++k) {
      const double w = a[static_cast<std::size_t>(lv - k)];
      const Grid2d& d = dtheta_[static_cast<std::size_t>(k) - 1];
      for (int e = lo; e < hi; ++e) out.v[static_cast<std::size_t>(e)] += w * d.v[static_cast<std::size_t>(e)];
    }
  });
  history_work_ += static_cast<std::uint64_t>(lv - 1) * static_cast<std::uint64_t>(dof);
}

void Stepper::step_full(int lv) {
  const SpaceGrid& g = cfg_.space;
  const double tau = cfg_.time.tau;
  const double kappa = cfg_.kappa;
  const L1PlusRow row = l1plus_row(lv, tau, amid_[static_cast<std::size_t>(lv) - 1]);
  const double b1 = row.b[0];

  direct_history_sum(lv, row.a, hsum_);
  source_mid(lv, fgrid_);

  // b1 * values(c^{n-1}) + (tau kappa / 2) (second_x value_y + value_x second_y) c^{n-1}
  //   - tau * history + tau * f, with boundary rows pinned to zero trace.
  rhs_.set_zero();
  axpy(b1, th_cur_, rhs_);
  apply_value_y(g, cur_, t1_);
  apply_second_x(g, t1_, t2_);
  axpy(0.5 * tau * kappa, t2_, rhs_);
  apply_value_x(g, cur_, t1_);
  apply_second_y(g, t1_, t2_);
  axpy(0.5 * tau * kappa, t2_, rhs_);
  axpy(-tau, hsum_, rhs_);
  axpy(tau, fgrid_, rhs_);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      if (g.on_boundary(i, j)) rhs_(i, j) = 0.0;

  Operator2dSpec spec;
  spec.value_value = b1;
  spec.second_value = -0.5 * tau * kappa;
  spec.value_second = -0.5 * tau * kappa;
  spec.dirichlet_rows = true;
  const SparseOperator2D op = assemble_2d(g, spec);
  full_solver_.factor(op);
  finish_level(full_solver_.solve(rhs_));
}

void Stepper::step_adi_first(int lv) {
  const SpaceGrid& g = cfg_.space;
  const double tau = cfg_.time.tau;
  const double kappa = cfg_.kappa;
  const double a1 = l1plus_coeff(1, tau, amid_[static_cast<std::size_t>(lv) - 1]);
  const double gam = gamma_n(tau, kappa, a1);

  // rhs = (value_x + gamma Lx)(value_y + gamma Ly) c^0 + (2 gamma / kappa) f
  apply_value_y(g, cur_, t1_);
  apply_ly(cur_, t2_);
  axpy(gam, t2_, t1_);  // (value_y + gamma Ly) c^0
  apply_value_x(g, t1_, rhs_);
  apply_lx(t1_, t2_);
  axpy(gam, t2_, rhs_);
  source_mid(lv, fgrid_);
  axpy(2.0 * gam / kappa, fgrid_, rhs_);

  sweep_x(gam, rhs_);
  sweep_y(gam, rhs_);
  finish_level(std::move(rhs_));
}

void Stepper::step_adi_general(int lv) {
  const SpaceGrid& g = cfg_.space;
  const double tau = cfg_.time.tau;
  const double kappa = cfg_.kappa;
  const double alpha = amid_[static_cast<std::size_t>(lv) - 1];

  if (is_fast(cfg_.kind)) {
    // Only reachable at lv == 2, where the full history is the single
    // increment of collocation values between the first two levels.
    const double a2 = l1plus_coeff(2, tau, alpha);
    hsum_.set_zero();
    axpy(a2, th_cur_, hsum_);
    axpy(-a2, th_prev_, hsum_);
    history_work_ += hsum_.size();
  } else {
    const L1PlusRow row = l1plus_row(lv, tau, alpha);
    direct_history_sum(lv, row.a, hsum_);
  }
  const double a1 = l1plus_coeff(1, tau, alpha);
  const double gam = gamma_n(tau, kappa, a1);

  rhs_ = th_cur_;
  apply_value_y(g, cur_, t1_);
  apply_lx(t1_, t2_);
  axpy(gam, t2_, rhs_);
  apply_value_x(g, cur_, t1_);
  apply_ly(t1_, t2_);
  axpy(gam, t2_, rhs_);
  apply_ly(cur_, t1_);
  apply_lx(t1_, t2_);
  axpy(2.0 * gam * gam, t2_, rhs_);
  apply_ly(prev_, t1_);
  apply_lx(t1_, t2_);
  axpy(-gam * gam, t2_, rhs_);
  axpy(-2.0 * gam / kappa, hsum_, rhs_);
  source_mid(lv, fgrid_);
  axpy(2.0 * gam / kappa, fgrid_, rhs_);

  sweep_x(gam, rhs_);
  sweep_y(gam, rhs_);
  finish_level(std::move(rhs_));
}

void Stepper::step_adi_fast(int lv) {
  const SpaceGrid& g = cfg_.space;
  const double tau = cfg_.time.tau;
  const double kappa = cfg_.kappa;
  const double alpha = amid_[static_cast<std::size_t>(lv) - 1];
  const double a1 = l1plus_coeff(1, tau, alpha);
  const double a2 = l1plus_coeff(2, tau, alpha);
  const double b1 = 1.0 + tau * a1;
  const double b2 = tau * a2;
  const double gam = gamma_n(tau, kappa, a1);

  // Advance the exponential-sum fields to this level with the increment two
  // levels back, then fold in the order-dependent weights.
  t1_ = prev_;
  axpy(-1.0, prev2_, t1_);
  esa_state_->push(*esa_, t1_);
  std::vector<double> w = esa_weights(*esa_, alpha);
  for (int r = 0; r < esa_->count(); ++r) w[static_cast<std::size_t>(r)] *= esa_b_[static_cast<std::size_t>(r)];
  esa_state_->weighted_sum(w, t1_);
  apply_value_xy(g, t1_, hsum_);
  history_work_ += 2ull * static_cast<std::uint64_t>(esa_->count()) * cur_.size();

  const double frac = b2 / b1;
  rhs_.set_zero();
  axpy(1.0 - frac, th_cur_, rhs_);
  axpy(frac, th_prev_, rhs_);
  apply_value_y(g, cur_, t1_);
  apply_lx(t1_, t2_);
  axpy(gam, t2_, rhs_);
  apply_value_x(g, cur_, t1_);
  apply_ly(t1_, t2_);
  axpy(gam, t2_, rhs_);
  apply_ly(cur_, t1_);
  apply_lx(t1_, t2_);
  axpy(2.0 * gam * gam, t2_, rhs_);
  apply_ly(prev_, t1_);
  apply_lx(t1_, t2_);
  axpy(-gam * gam, t2_, rhs_);
  const double esa_scale =
      2.0 * gam * std::pow(cfg_.time.horizon, -alpha) /
      (tau * kappa * std::tgamma(1.0 - alpha));
  axpy(-esa_scale, hsum_, rhs_);
  source_mid(lv, fgrid_);
  axpy(2.0 * gam / kappa, fgrid_, rhs_);

  sweep_x(gam, rhs_);
  sweep_y(gam, rhs_);
  finish_level(std::move(rhs_));
}

void Stepper::finish_level(Grid2d&& cnew) {
  require(cnew.all_finite(), ErrorKind::Internal,
          "step produced a non-finite field at level " + std::to_string(n_ + 1));
  std::swap(prev2_, prev_);
  std::swap(prev_, cur_);
  cur_ = std::move(cnew);
  std::swap(th_prev_, th_cur_);
  apply_value_xy(cfg_.space, cur_, th_cur_);
  if (!is_fast(cfg_.kind)) {
    Grid2d d = th_cur_;
    axpy(-1.0, th_prev_, d);
    dtheta_.push_back(std::move(d));
  }
  ++n_;
  if (keep_trajectory_) trajectory_.push_back(cur_);
  if (&cnew == &rhs_) rhs_ = cfg_.space.zeros();  // rebuild the scratch field
}

void Stepper::advance() {
  require(n_ < cfg_.time.levels, ErrorKind::Usage, "Stepper: already at the final level");
  const int lv = n_ + 1;
  try {
    switch (cfg_.kind) {
      case SchemeKind::QscL1p:
        step_full(lv);
        break;
      case SchemeKind::AdiQscL1p:
      case SchemeKind::OptAdiQscL1p:
        if (lv == 1)
          step_adi_first(lv);
        else
          step_adi_general(lv);
        break;
      case SchemeKind::AdiQscFl1p:
      case SchemeKind::OptAdiQscFl1p:
        if (lv == 1)
          step_adi_first(lv);
        else if (lv == 2)
          step_adi_general(lv);
        else
          step_adi_fast(lv);
        break;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Internal,
         "step failed at level " + std::to_string(lv) + ": " + e.what());
  }
}

RunResult run(const SchemeConfig& cfg, const RunOptions& opts) {
  Stepper stepper(cfg, opts.keep_trajectory);
  const double tau = cfg.time.tau;

  std::vector<int> snapshot_levels;
  snapshot_levels.reserve(opts.snapshot_times.size());
  for (double t : opts.snapshot_times) {
    const int idx = static_cast<int>(std::llround(t / tau));
    require(idx >= 0 && idx <= cfg.time.levels &&
                std::abs(idx * tau - t) <= 1e-9 * std::max(tau, std::abs(t)),
            ErrorKind::Usage, "run: snapshot time is not a grid node");
    snapshot_levels.push_back(idx);
  }

  RunResult result;
  result.snapshots.resize(snapshot_levels.size());
  for (std::size_t s = 0; s < snapshot_levels.size(); ++s)
    if (snapshot_levels[s] == 0) result.snapshots[s] = stepper.current();

  const auto start = std::chrono::steady_clock::now();
  while (stepper.level() < cfg.time.levels) {
    stepper.advance();
    for (std::size_t s = 0; s < snapshot_levels.size(); ++s)
      if (snapshot_levels[s] == stepper.level()) result.snapshots[s] = stepper.current();
  }
  const auto stop = std::chrono::steady_clock::now();

  result.timeloop_seconds = std::chrono::duration<double>(stop - start).count();
  result.final_dofs = stepper.current();
  result.history_work = stepper.history_work();
  if (opts.keep_trajectory) result.trajectory = stepper.trajectory();
  result.warnings = cfg.alpha.warnings();
  result.warnings.insert(result.warnings.end(), cfg.time.warnings.begin(),
                         cfg.time.warnings.end());
  return result;
}

namespace {

// Residual helper: applies Lx Ly (second differences, optionally with the
// fourth-difference boost) to a field.
void apply_lxly(const SchemeConfig& cfg, const Grid2d& in, Grid2d& out, Grid2d& tmp,
                Grid2d& tmp2) {
  const SpaceGrid& g = cfg.space;
  apply_second_y(g, in, tmp);
  if (is_optimal(cfg.kind)) {
    apply_fourth_y(g, in, tmp2);
    axpy(1.0, tmp2, tmp);
  }
  apply_second_x(g, tmp, out);
  if (is_optimal(cfg.kind)) {
    apply_fourth_x(g, tmp, tmp2);
    axpy(1.0, tmp2, out);
  }
}

void apply_cross(const SchemeConfig& cfg, const Grid2d& in, Grid2d& out, Grid2d& tmp,
                 Grid2d& tmp2) {
  const SpaceGrid& g = cfg.space;
  apply_value_y(g, in, tmp);
  apply_second_x(g, tmp, out);
  if (is_optimal(cfg.kind)) {
    apply_fourth_x(g, tmp, tmp2);
    axpy(1.0, tmp2, out);
  }
  apply_value_x(g, in, tmp);
  apply_second_y(g, tmp, tmp2);
  axpy(1.0, tmp2, out);
  if (is_optimal(cfg.kind)) {
    apply_fourth_y(g, tmp, tmp2);
    axpy(1.0, tmp2, out);
  }
}

}  // namespace

double residual_check(const SchemeConfig& cfg, std::span<const Grid2d> trajectory) {
  require(static_cast<int>(trajectory.size()) == cfg.time.levels + 1, ErrorKind::Usage,
          "residual_check: trajectory must hold levels 0..N");
  if (cfg.time.levels == 0) return 0.0;
  const SpaceGrid& g = cfg.space;
  const double tau = cfg.time.tau;
  const double kappa = cfg.kappa;
  const std::vector<double> amid = midpoint_orders(cfg.alpha, cfg.time);

  auto source_grid = cfg.source_grid;
  if (!source_grid) {
    const auto pointwise = cfg.source;
    source_grid = [pointwise](double t, const SpaceGrid& gg, Grid2d& out) {
      if (!same_shape(out, Grid2d(gg.nx(), gg.ny()))) out = Grid2d(gg.nx(), gg.ny());
      for (int i = 0; i < gg.nx(); ++i)
        for (int j = 0; j < gg.ny(); ++j) out(i, j) = pointwise(gg.colloc_x(i), gg.colloc_y(j), t);
    };
  }

  std::vector<Grid2d> th(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k)
    apply_value_xy(g, trajectory[k], th[k]);

  std::optional<EsaQuadrature> esa;
  std::optional<EsaHistoryState> state;
  std::vector<double> esa_b;
  if (is_fast(cfg.kind) && cfg.time.levels >= 3) {
    esa = esa_params(cfg.alpha.lower(), cfg.alpha.upper(), cfg.esa_eps, cfg.time.horizon,
                     cfg.time.tau);
    state.emplace(*esa, g.nx(), g.ny());
    esa_b.resize(static_cast<std::size_t>(esa->count()));
    for (int r = 0; r < esa->count(); ++r) esa_b[static_cast<std::size_t>(r)] = esa_b_coeff(3, r, *esa);
  }

  Grid2d res, t1, t2, t3, s1, f;
  double worst = 0.0;
  for (int n = 1; n <= cfg.time.levels; ++n) {
    const double alpha = amid[static_cast<std::size_t>(n) - 1];
    const double a1 = l1plus_coeff(1, tau, alpha);
    const double b1 = 1.0 + tau * a1;
    const Grid2d& cn = trajectory[static_cast<std::size_t>(n)];
    const Grid2d& cn1 = trajectory[static_cast<std::size_t>(n) - 1];

    source_grid(cfg.time.midpoint(n), g, f);
    res = g.zeros();

    // History side: sum_k b_{n-k+1} (theta^k - theta^{k-1}), or its
    // kernel-compressed form at fast levels (the 1/tau of the averaged
    // derivative is absorbed by the overall tau scaling).
    const bool fast_level = is_fast(cfg.kind) && n >= 3;
    if (!fast_level) {
      const L1PlusRow row = l1plus_row(n, tau, alpha);
      for (int k = 1; k <= n; ++k) {
        const double w = row.b[static_cast<std::size_t>(n - k)];
        axpy(w, th[static_cast<std::size_t>(k)], res);
        axpy(-w, th[static_cast<std::size_t>(k) - 1], res);
      }
    } else {
      const double b2 = tau * l1plus_coeff(2, tau, alpha);
      t1 = trajectory[static_cast<std::size_t>(n) - 2];
      axpy(-1.0, trajectory[static_cast<std::size_t>(n) - 3], t1);
      state->push(*esa, t1);
      std::vector<double> w = esa_weights(*esa, alpha);
      for (int r = 0; r < esa->count(); ++r)
        w[static_cast<std::size_t>(r)] *= esa_b[static_cast<std::size_t>(r)];
      state->weighted_sum(w, t1);
      apply_value_xy(g, t1, t2);
      const double pref = std::pow(cfg.time.horizon, -alpha) / std::tgamma(1.0 - alpha);
      axpy(b1, th[static_cast<std::size_t>(n)], res);
      axpy(-b1, th[static_cast<std::size_t>(n) - 1], res);
      axpy(b2, th[static_cast<std::size_t>(n) - 1], res);
      axpy(-b2, th[static_cast<std::size_t>(n) - 2], res);
      axpy(pref, t2, res);
    }

    // Directional-splitting defect term of the ADI kinds.
    if (is_adi(cfg.kind)) {
      t3 = cn;
      axpy(-1.0, cn1, t3);
      if (n >= 2) {
        axpy(-1.0, cn1, t3);
        axpy(1.0, trajectory[static_cast<std::size_t>(n) - 2], t3);
      }
      apply_lxly(cfg, t3, t1, t2, s1);
      axpy(tau * tau * kappa * kappa / (4.0 * b1), t1, res);
    }

    // Diffusion and source at the half level.
    t3 = cn;
    axpy(1.0, cn1, t3);
    for (double& x : t3.v) x *= 0.5;
    apply_cross(cfg, t3, t1, t2, s1);
    axpy(-tau * kappa, t1, res);
    axpy(-tau, f, res);

    if (cfg.kind == SchemeKind::QscL1p) {
      double m = 0.0;
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          m = std::max(m, std::abs(g.on_boundary(i, j) ? th[static_cast<std::size_t>(n)](i, j)
                                                       : res(i, j)));
      worst = std::max(worst, m);
    } else {
      worst = std::max(worst, res.max_abs());
    }
  }
  return worst;
}

}  // namespace votfmid
