#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cli_config.hpp"
#include "votfmid/properties.hpp"

namespace {

using namespace votfmid;
using cli::RunConfig;

constexpr const char* kUsage = R"(votfmid - variable-order time-fractional mobile/immobile diffusion solvers

usage: votfmid <subcommand> [--config FILE] [--key value ...]

subcommands:
  solve        run one scheme at one resolution, report the final error
  convergence  refinement study (axis = time | space), emit a report table
  compare      fast vs. direct scheme agreement at one resolution
  properties   run the library property suites (--filter substring)
  bench        direct vs. fast history timing study

keys (config file `key = value` lines or --key value flags; flags win):
  scheme   qsc_l1p | adi_qsc_l1p | adi_qsc_fl1p | opt_adi_qsc_l1p | opt_adi_qsc_fl1p
  alpha    a0 | a1 | a2 | a3 | affine:p,q      problem  example61 | example62_paper |
  kappa    diffusion coefficient                         example62_corrected
  T        time horizon            N        level count or comma list
  Mx, My   cell counts             epsilon  fast-scheme kernel accuracy
  out      output path             format   csv | md
  axis     time | space            fixed    fixed other-axis resolution
  eval_time two-mesh evaluation time        filter   properties name filter
  assert   on | off                orders   asserted order band lo,hi
  tol      compare tolerance       timing   on | off (off zeroes seconds)

exit codes: 0 ok, 1 configuration/validation error, 2 runtime error,
            3 assertion or property failure
)";

void print_warnings(const std::vector<std::string>& warnings) {
  std::set<std::string> seen;
  for (const std::string& w : warnings)
    if (seen.insert(w).second) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int my_of(const RunConfig& rc, int mx) { return rc.my > 0 ? rc.my : mx; }

int cmd_solve(const RunConfig& rc) {
  const VariableOrder vo = rc.make_order();
  const Problem problem = rc.make_problem();
  const SchemeConfig cfg = make_config(problem, vo, rc.scheme, rc.levels.front(), rc.mx.front(),
                                       my_of(rc, rc.mx.front()), rc.epsilon);
  const RunResult res = run(cfg);
  print_warnings(res.warnings);

  ConvergenceReport report;
  report.axis = Axis::Time;
  report.scheme = scheme_name(rc.scheme);
  report.alpha_name = vo.name();
  report.problem = problem.name;
  report.eval_time = vo.horizon();
  ReportRow row;
  row.level = rc.levels.front();
  row.step = cfg.time.tau;
  row.err = problem.has_exact()
                ? error_vs_true(cfg.space, res.final_dofs, problem, vo.horizon())
                : 0.0;
  row.seconds = res.timeloop_seconds;
  report.rows.push_back(row);

  std::printf("scheme=%s alpha=%s problem=%s N=%d Mx=%d My=%d\n", scheme_name(rc.scheme),
              vo.name().c_str(), problem.name.c_str(), rc.levels.front(), rc.mx.front(),
              my_of(rc, rc.mx.front()));
  if (problem.has_exact()) std::printf("err_l2 = %.17g\n", row.err);
  if (rc.timing) std::printf("timeloop_seconds = %.3f\n", res.timeloop_seconds);
  if (!rc.out.empty()) cli::emit_report(report, rc.format, rc.out, rc.timing);
  return 0;
}

int assert_orders(const RunConfig& rc, const ConvergenceReport& report) {
  if (!rc.assert_bands) return 0;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double order = report.rows[i].order.value_or(0.0);
    if (order < rc.order_lo || order > rc.order_hi) {
      std::fprintf(stderr, "assert: observed order %.3f outside [%g, %g] at row %zu\n", order,
                   rc.order_lo, rc.order_hi, i);
      return 3;
    }
  }
  return 0;
}

int cmd_convergence(const RunConfig& rc) {
  const VariableOrder vo = rc.make_order();
  const Problem problem = rc.make_problem();
  ConvergenceReport report;
  if (rc.axis == "time") {
    const int m = rc.fixed > 0 ? rc.fixed : rc.mx.front();
    if (problem.has_exact()) {
      report = convergence_study(problem, vo, rc.scheme, Axis::Time, rc.levels, m, rc.epsilon);
    } else {
      const double t_eval = rc.eval_time > 0.0 ? rc.eval_time : vo.horizon();
      const double times[] = {t_eval};
      report = two_mesh_study(problem, vo, rc.scheme, rc.levels, m, times, rc.epsilon).front();
    }
  } else {
    require(problem.has_exact(), ErrorKind::Config,
            "space-axis study needs a problem with an exact solution");
    const int n = rc.fixed > 0 ? rc.fixed : rc.levels.front();
    report = convergence_study(problem, vo, rc.scheme, Axis::Space, rc.mx, n, rc.epsilon);
  }
  print_warnings(vo.warnings());
  cli::emit_report(report, rc.format, rc.out, rc.timing);
  return assert_orders(rc, report);
}

int cmd_compare(const RunConfig& rc) {
  require(is_fast(rc.scheme), ErrorKind::Config,
          "compare expects a fast scheme (adi_qsc_fl1p or opt_adi_qsc_fl1p); it is matched "
          "against its direct-history counterpart");
  const SchemeKind direct_kind = rc.scheme == SchemeKind::AdiQscFl1p
                                     ? SchemeKind::AdiQscL1p
                                     : SchemeKind::OptAdiQscL1p;
  const VariableOrder vo = rc.make_order();
  const Problem problem = rc.make_problem();
  const int n = rc.levels.front(), m = rc.mx.front();
  const RunResult fast =
      run(make_config(problem, vo, rc.scheme, n, m, my_of(rc, m), rc.epsilon));
  const RunResult direct =
      run(make_config(problem, vo, direct_kind, n, m, my_of(rc, m), rc.epsilon));
  const double diff = max_abs_diff(fast.final_dofs, direct.final_dofs);
  print_warnings(fast.warnings);
  std::printf("%s vs %s: N=%d Mx=%d epsilon=%g max_dof_diff = %.17g\n", scheme_name(rc.scheme),
              scheme_name(direct_kind), n, m, rc.epsilon, diff);
  if (rc.tolerance >= 0.0 && diff > rc.tolerance) {
    std::fprintf(stderr, "assert: difference %.3e above tolerance %.3e\n", diff, rc.tolerance);
    return 3;
  }
  return 0;
}

int cmd_properties(const RunConfig& rc) {
  const std::vector<PropertyResult> results = run_property_suites(rc.filter);
  if (results.empty()) {
    std::fprintf(stderr, "no property suite matches filter '%s'\n", rc.filter.c_str());
    return 1;
  }
  int failures = 0;
  for (const PropertyResult& r : results) {
    if (r.pass) {
      std::printf("PASS %s\n", r.name.c_str());
    } else {
      ++failures;
      std::printf("FAIL %s: %s\n", r.name.c_str(), r.detail.c_str());
    }
  }
  std::printf("%zu suites, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 3;
}

int cmd_bench(const RunConfig& rc) {
  const VariableOrder vo = rc.make_order();
  const Problem problem = rc.make_problem();
  const SpeedupReport report = speedup_study(problem, vo, rc.levels, rc.mx.front(), rc.epsilon);
  print_warnings(vo.warnings());

  std::printf("N,direct_seconds,fast_seconds,wall_ratio,direct_work,fast_work\n");
  for (const SpeedupRow& row : report.rows)
    std::printf("%d,%.17g,%.17g,%.3f,%llu,%llu\n", row.levels,
                rc.timing ? row.direct_seconds : 0.0, rc.timing ? row.fast_seconds : 0.0,
                row.fast_seconds / row.direct_seconds,
                static_cast<unsigned long long>(row.direct_work),
                static_cast<unsigned long long>(row.fast_work));

  bool hard_fail = false;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double direct_ratio = static_cast<double>(report.rows[i].direct_work) /
                                static_cast<double>(report.rows[i - 1].direct_work);
    const double fast_ratio = static_cast<double>(report.rows[i].fast_work) /
                              static_cast<double>(report.rows[i - 1].fast_work);
    if (direct_ratio < 3.0 || direct_ratio > 5.0) {
      std::fprintf(stderr, "warn: direct work doubling ratio %.2f outside [3, 5]\n", direct_ratio);
      hard_fail = true;
    }
    if (fast_ratio > 2.7 || fast_ratio < 1.7) {
      std::fprintf(stderr, "warn: fast work doubling ratio %.2f outside [1.7, 2.7]\n", fast_ratio);
      hard_fail = true;
    }
  }
  const SpeedupRow& last = report.rows.back();
  if (last.fast_seconds > 0.7 * last.direct_seconds)
    std::fprintf(stderr, "warn: fast/direct wall ratio %.2f above 0.7 at N=%d (timing noise?)\n",
                 last.fast_seconds / last.direct_seconds, last.levels);
  return (rc.assert_bands && hard_fail) ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
    std::fputs(kUsage, stdout);
    return argc < 2 ? 1 : 0;
  }
  try {
    std::string subcommand;
    int arg_begin = 1;
    if (argv[1][0] != '-') {
      subcommand = argv[1];
      arg_begin = 2;
    }

    std::string config_path;
    std::map<std::string, std::string> flags;
    for (int i = arg_begin; i < argc; ++i) {
      std::string arg = argv[i];
      require(arg.rfind("--", 0) == 0, ErrorKind::Parse,
              "expected --key value, got '" + arg + "'");
      arg = arg.substr(2);
      std::string value;
      const auto eq = arg.find('=');
      if (eq != std::string::npos) {
        value = arg.substr(eq + 1);
        arg = arg.substr(0, eq);
      } else {
        require(i + 1 < argc, ErrorKind::Parse, "flag --" + arg + " needs a value");
        value = argv[++i];
      }
      if (arg == "config")
        config_path = value;
      else
        flags[arg] = value;
    }

    std::string file_text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      require(static_cast<bool>(in), ErrorKind::Io,
              "cannot read config file '" + config_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      file_text = ss.str();
    }

    const RunConfig rc = cli::parse_config(file_text, config_path.empty() ? "<config>" : config_path,
                                           flags, subcommand);
    if (rc.subcommand == "solve") return cmd_solve(rc);
    if (rc.subcommand == "convergence") return cmd_convergence(rc);
    if (rc.subcommand == "compare") return cmd_compare(rc);
    if (rc.subcommand == "properties") return cmd_properties(rc);
    return cmd_bench(rc);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::Config:
      case ErrorKind::Usage:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
