#pragma once

#include <map>
#include <string>
#include <vector>

#include "votfmid/experiments.hpp"
#include "votfmid/schemes.hpp"

namespace votfmid::cli {

struct RunConfig {
  std::string subcommand;  // solve | convergence | compare | properties | bench
  SchemeKind scheme = SchemeKind::AdiQscL1p;
  std::string alpha = "a1";  // a0..a3 or affine:p,q
  std::string problem = "example62_corrected";
  double kappa = 1.0;
  double horizon = 1.0;
  std::vector<int> levels = {64};  // N or N-list
  std::vector<int> mx = {16};      // Mx or Mx-list
  int my = -1;                     // -1: same as mx
  double epsilon = 1e-12;
  std::string out;            // output path; empty writes to stdout
  std::string format = "csv"; // csv | md
  std::string axis = "time";  // convergence axis: time | space
  int fixed = -1;             // fixed other-axis resolution (convergence)
  double eval_time = -1.0;    // two-mesh evaluation time; -1: horizon
  std::string filter;         // properties name filter
  bool assert_bands = false;  // convergence/bench: nonzero exit outside bands
  double order_lo = 0.0, order_hi = 0.0;  // asserted order band (assert_bands)
  double tolerance = -1.0;    // compare: asserted max-norm difference
  bool timing = true;         // false: report zero seconds (byte-stable output)

  VariableOrder make_order() const;
  Problem make_problem() const;
};

/// Parses `key = value` config text (with '#' comments) plus command-line
/// overrides into a validated RunConfig. Parse errors carry the offending
/// line number or key; validation errors name the inconsistent keys.
RunConfig parse_config(const std::string& file_text, const std::string& file_name,
                       const std::map<std::string, std::string>& flag_overrides,
                       const std::string& subcommand);

/// Serializes a convergence report. CSV header is exactly
/// `level,step,err_l2,order,seconds` with the order cell blank on the first
/// row; Markdown mirrors a step | Err | Order table. Empty path writes to
/// stdout.
void emit_report(const ConvergenceReport& report, const std::string& format,
                 const std::string& path, bool timing);

std::string render_report(const ConvergenceReport& report, const std::string& format,
                          bool timing);

}  // namespace votfmid::cli
