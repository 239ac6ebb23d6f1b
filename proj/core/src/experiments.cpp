#include "votfmid/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

namespace votfmid {
namespace {

using std::numbers::pi;

double time_factor_62(double t, double alpha_t) {
  return 3.0 * t * t +
         std::tgamma(4.0) / std::tgamma(4.0 - alpha_t) * std::pow(t, 3.0 - alpha_t) +
         2.0 * pi * pi * (1.0 + t * t * t);
}

}  // namespace

Problem example61() {
  Problem p;
  p.name = "example61";
  p.kappa = 1.0;
  p.initial = [](double x, double y) { return std::sin(x) * std::sin(y); };
  p.source_for = [](const VariableOrder&) {
    return [](double, double, double) { return 0.0; };
  };
  p.source_grid_for = [](const VariableOrder&) {
    return [](double, const SpaceGrid& g, Grid2d& out) {
      if (!same_shape(out, Grid2d(g.nx(), g.ny()))) out = Grid2d(g.nx(), g.ny());
      out.set_zero();
    };
  };
  return p;
}

Problem example62(bool corrected) {
  Problem p;
  p.name = corrected ? "example62_corrected" : "example62_paper";
  p.kappa = 1.0;
  if (corrected)
    p.initial = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  else
    p.initial = [](double x, double y) { return std::sin(x) * std::sin(y); };
  p.exact = [](double x, double y, double t) {
    return (1.0 + t * t * t) * std::sin(pi * x) * std::sin(pi * y);
  };
  p.source_for = [](const VariableOrder& vo) {
    return [vo](double x, double y, double t) {
      return time_factor_62(t, vo(t)) * std::sin(pi * x) * std::sin(pi * y);
    };
  };
  p.source_grid_for = [](const VariableOrder& vo) {
    // The source separates into g(t) * S(x, y); cache the spatial factor.
    auto cache = std::make_shared<Grid2d>();
    return [vo, cache](double t, const SpaceGrid& g, Grid2d& out) {
      if (!same_shape(*cache, Grid2d(g.nx(), g.ny()))) {
        *cache = g.sample(
            [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
      }
      if (!same_shape(out, *cache)) out = Grid2d(g.nx(), g.ny());
      const double gt = time_factor_62(t, vo(t));
      for (std::size_t k = 0; k < out.size(); ++k) out.v[k] = gt * cache->v[k];
    };
  };
  return p;
}

SchemeConfig make_config(const Problem& p, const VariableOrder& vo, SchemeKind kind, int levels,
                         int mx, int my, double esa_eps) {
  SchemeConfig cfg(kind, vo, TimeGrid(vo.horizon(), levels),
                   SpaceGrid(p.x_lo, p.x_hi, p.y_lo, p.y_hi, mx, my));
  cfg.kappa = p.kappa;
  cfg.esa_eps = esa_eps;
  cfg.initial = p.initial;
  cfg.source = p.source_for(vo);
  if (p.source_grid_for) cfg.source_grid = p.source_grid_for(vo);
  return cfg;
}

double error_vs_true(const SpaceGrid& g, const Grid2d& dofs, const Problem& p, double t) {
  require(p.has_exact(), ErrorKind::Usage,
          "error_vs_true: problem '" + p.name + "' has no exact solution");
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double x = g.colloc_x(i);
    for (int j = 0; j < g.ny(); ++j) {
      const double y = g.colloc_y(j);
      const double d = eval_spline(g, dofs, x, y) - p.exact(x, y, t);
      acc += d * d;
    }
  }
  return std::sqrt(g.dx * g.dy * acc);
}

double two_mesh_error(const SpaceGrid& g, const Grid2d& coarse, const Grid2d& fine) {
  require(coarse.nx == g.nx() && coarse.ny == g.ny(), ErrorKind::Usage,
          "two_mesh_error: shape mismatch");
  require_shape(coarse, fine, "two_mesh_error");
  Grid2d uc, uf;
  apply_value_xy(g, coarse, uc);
  apply_value_xy(g, fine, uf);
  double acc = 0.0;
  for (std::size_t k = 0; k < uc.size(); ++k) {
    const double d = uc.v[k] - uf.v[k];
    acc += d * d;
  }
  return std::sqrt(g.dx * g.dy * acc);
}

void fill_orders(ConvergenceReport& report) {
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    if (r == 0) {
      report.rows[r].order.reset();
      continue;
    }
    report.rows[r].order = std::log2(report.rows[r - 1].err / report.rows[r].err);
  }
}

ConvergenceReport convergence_study(const Problem& p, const VariableOrder& vo, SchemeKind kind,
                                    Axis axis, std::span<const int> refinements, int fixed_other,
                                    double esa_eps) {
  require(refinements.size() >= 1, ErrorKind::Usage, "convergence_study: empty refinement list");
  require(p.has_exact(), ErrorKind::Usage,
          "convergence_study: problem '" + p.name + "' needs an exact solution");
  ConvergenceReport report;
  report.axis = axis;
  report.scheme = scheme_name(kind);
  report.alpha_name = vo.name();
  report.problem = p.name;
  report.eval_time = vo.horizon();
  for (int r : refinements) {
    const int levels = axis == Axis::Time ? r : fixed_other;
    const int m = axis == Axis::Time ? fixed_other : r;
    const SchemeConfig cfg = make_config(p, vo, kind, levels, m, m, esa_eps);
    const RunResult res = run(cfg);
    ReportRow row;
    row.level = r;
    row.step = axis == Axis::Time ? cfg.time.tau : cfg.space.dx;
    row.err = error_vs_true(cfg.space, res.final_dofs, p, vo.horizon());
    row.seconds = res.timeloop_seconds;
    report.rows.push_back(row);
  }
  fill_orders(report);
  return report;
}

std::vector<ConvergenceReport> two_mesh_study(const Problem& p, const VariableOrder& vo,
                                              SchemeKind kind, std::span<const int> level_list,
                                              int m_fixed, std::span<const double> eval_times,
                                              double esa_eps) {
  require(level_list.size() >= 1, ErrorKind::Usage, "two_mesh_study: empty level list");
  require(eval_times.size() >= 1, ErrorKind::Usage, "two_mesh_study: no evaluation times");

  // Run each required N once (every listed N plus its doubling).
  std::map<int, RunResult> runs;
  const SchemeConfig probe = make_config(p, vo, kind, level_list[0], m_fixed, m_fixed, esa_eps);
  RunOptions opts;
  opts.snapshot_times.assign(eval_times.begin(), eval_times.end());
  for (int n : level_list) {
    for (int levels : {n, 2 * n}) {
      if (runs.count(levels)) continue;
      const SchemeConfig cfg = make_config(p, vo, kind, levels, m_fixed, m_fixed, esa_eps);
      runs.emplace(levels, run(cfg, opts));
    }
  }

  std::vector<ConvergenceReport> reports;
  for (std::size_t e = 0; e < eval_times.size(); ++e) {
    ConvergenceReport report;
    report.axis = Axis::Time;
    report.scheme = scheme_name(kind);
    report.alpha_name = vo.name();
    report.problem = p.name;
    report.eval_time = eval_times[e];
    for (int n : level_list) {
      const RunResult& coarse = runs.at(n);
      const RunResult& fine = runs.at(2 * n);
      ReportRow row;
      row.level = n;
      row.step = vo.horizon() / n;
      row.err = two_mesh_error(probe.space, coarse.snapshots[e], fine.snapshots[e]);
      row.seconds = coarse.timeloop_seconds;
      report.rows.push_back(row);
    }
    fill_orders(report);
    reports.push_back(std::move(report));
  }
  return reports;
}

SpeedupReport speedup_study(const Problem& p, const VariableOrder& vo,
                            std::span<const int> level_list, int m_fixed, double esa_eps) {
  require(level_list.size() >= 1, ErrorKind::Usage, "speedup_study: empty level list");
  SpeedupReport report;
  for (int n : level_list) {
    SpeedupRow row;
    row.levels = n;
    for (SchemeKind kind : {SchemeKind::AdiQscL1p, SchemeKind::AdiQscFl1p}) {
      const SchemeConfig cfg = make_config(p, vo, kind, n, m_fixed, m_fixed, esa_eps);
      double best = 0.0;
      RunResult res;
      for (int rep = 0; rep < 3; ++rep) {
        RunResult r = run(cfg);
        if (rep == 0 || r.timeloop_seconds < best) best = r.timeloop_seconds;
        if (rep == 0) res = std::move(r);
      }
      const double err = p.has_exact()
                             ? error_vs_true(cfg.space, res.final_dofs, p, vo.horizon())
                             : 0.0;
      if (kind == SchemeKind::AdiQscL1p) {
        row.direct_seconds = best;
        row.direct_work = res.history_work;
        row.err_direct = err;
      } else {
        row.fast_seconds = best;
        row.fast_work = res.history_work;
        row.err_fast = err;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace votfmid
