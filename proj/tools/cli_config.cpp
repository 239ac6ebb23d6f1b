#include "cli_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "votfmid/errors.hpp"

namespace votfmid::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "subcommand", "scheme", "alpha",  "problem", "kappa",     "T",
      "N",          "Mx",     "My",     "epsilon", "out",       "format",
      "axis",       "fixed",  "filter", "assert",  "orders",    "eval_time",
      "tol",        "timing"};
  return keys;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    require(used == value.size(), ErrorKind::Parse, "");
    return x;
  } catch (...) {
    fail(ErrorKind::Parse, "key '" + key + "': malformed number '" + value + "'");
  }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const double x = parse_number(key, item);
    const int n = static_cast<int>(x);
    require(x == n, ErrorKind::Parse, "key '" + key + "': expected integer, got '" + item + "'");
    out.push_back(n);
  }
  require(!out.empty(), ErrorKind::Parse, "key '" + key + "': empty list");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  fail(ErrorKind::Parse, "key '" + key + "': expected on/off, got '" + value + "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "subcommand") {
    cfg.subcommand = value;
  } else if (key == "scheme") {
    const auto kind = scheme_from_name(value);
    require(kind.has_value(), ErrorKind::Parse,
            "key 'scheme': unknown scheme '" + value +
                "' (expected qsc_l1p, adi_qsc_l1p, adi_qsc_fl1p, opt_adi_qsc_l1p, "
                "opt_adi_qsc_fl1p)");
    cfg.scheme = *kind;
  } else if (key == "alpha") {
    cfg.alpha = value;
  } else if (key == "problem") {
    cfg.problem = value;
  } else if (key == "kappa") {
    cfg.kappa = parse_number(key, value);
  } else if (key == "T") {
    cfg.horizon = parse_number(key, value);
  } else if (key == "N") {
    cfg.levels = parse_int_list(key, value);
  } else if (key == "Mx") {
    cfg.mx = parse_int_list(key, value);
  } else if (key == "My") {
    cfg.my = static_cast<int>(parse_number(key, value));
  } else if (key == "epsilon") {
    cfg.epsilon = parse_number(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "axis") {
    cfg.axis = value;
  } else if (key == "fixed") {
    cfg.fixed = static_cast<int>(parse_number(key, value));
  } else if (key == "filter") {
    cfg.filter = value;
  } else if (key == "assert") {
    cfg.assert_bands = parse_bool(key, value);
  } else if (key == "orders") {
    std::stringstream ss(value);
    std::string lo, hi;
    require(static_cast<bool>(std::getline(ss, lo, ',')) &&
                static_cast<bool>(std::getline(ss, hi, ',')),
            ErrorKind::Parse, "key 'orders': expected 'lo,hi'");
    cfg.order_lo = parse_number(key, trim(lo));
    cfg.order_hi = parse_number(key, trim(hi));
  } else if (key == "eval_time") {
    cfg.eval_time = parse_number(key, value);
  } else if (key == "tol") {
    cfg.tolerance = parse_number(key, value);
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, value);
  } else {
    fail(ErrorKind::Parse, "unknown key '" + key + "'");
  }
}

void validate(const RunConfig& cfg) {
  const std::set<std::string> subcommands = {"solve", "convergence", "compare", "properties",
                                             "bench"};
  require(subcommands.count(cfg.subcommand) == 1, ErrorKind::Parse,
          "unknown subcommand '" + cfg.subcommand +
              "' (expected solve, convergence, compare, properties or bench)");
  require(cfg.format == "csv" || cfg.format == "md", ErrorKind::Parse,
          "key 'format': expected csv or md, got '" + cfg.format + "'");
  require(cfg.axis == "time" || cfg.axis == "space", ErrorKind::Parse,
          "key 'axis': expected time or space, got '" + cfg.axis + "'");
  require(cfg.kappa > 0.0, ErrorKind::Parse, "key 'kappa': must be positive");
  require(cfg.horizon > 0.0, ErrorKind::Parse, "key 'T': must be positive");
  require(!cfg.levels.empty() && !cfg.mx.empty(), ErrorKind::Parse,
          "keys 'N' and 'Mx' must be nonempty");
  for (const int n : cfg.levels)
    require(n >= 0, ErrorKind::Parse, "key 'N': level counts must be nonnegative");
  const std::set<std::string> problems = {"example61", "example62_paper", "example62_corrected"};
  require(problems.count(cfg.problem) == 1, ErrorKind::Parse,
          "key 'problem': unknown problem '" + cfg.problem +
              "' (expected example61, example62_paper or example62_corrected)");
  if (is_optimal(cfg.scheme)) {
    for (const int m : cfg.mx)
      require(m >= 6, ErrorKind::Parse,
              "key 'Mx': optimal schemes require Mx >= 6 (got " + std::to_string(m) + ")");
    require(cfg.my < 0 || cfg.my >= 6, ErrorKind::Parse,
            "key 'My': optimal schemes require My >= 6 (got " + std::to_string(cfg.my) + ")");
  }
  if (is_fast(cfg.scheme))
    require(cfg.epsilon > 0.0 && cfg.epsilon <= 0.3678794411714423, ErrorKind::Parse,
            "key 'epsilon': fast schemes require 0 < epsilon <= 1/e");
  // The alpha spec is validated by construction.
  RunConfig probe = cfg;
  probe.make_order();
}

}  // namespace

VariableOrder RunConfig::make_order() const {
  if (alpha == "a0") return VariableOrder::preset(AlphaPreset::A0, horizon);
  if (alpha == "a1") return VariableOrder::preset(AlphaPreset::A1, horizon);
  if (alpha == "a2") return VariableOrder::preset(AlphaPreset::A2, horizon);
  if (alpha == "a3") return VariableOrder::preset(AlphaPreset::A3, horizon);
  if (alpha.rfind("affine:", 0) == 0) {
    std::stringstream ss(alpha.substr(7));
    std::string p, q;
    require(static_cast<bool>(std::getline(ss, p, ',')) &&
                static_cast<bool>(std::getline(ss, q, ',')),
            ErrorKind::Parse, "key 'alpha': affine form is affine:p,q");
    return VariableOrder::affine(parse_number("alpha", trim(p)), parse_number("alpha", trim(q)),
                                 horizon);
  }
  fail(ErrorKind::Parse,
       "key 'alpha': unknown order '" + alpha + "' (expected a0..a3 or affine:p,q)");
}

Problem RunConfig::make_problem() const {
  Problem p;
  if (problem == "example61")
    p = example61();
  else if (problem == "example62_paper")
    p = example62(false);
  else
    p = example62(true);
  p.kappa = kappa;
  return p;
}

RunConfig parse_config(const std::string& file_text, const std::string& file_name,
                       const std::map<std::string, std::string>& flag_overrides,
                       const std::string& subcommand) {
  RunConfig cfg;
  if (!subcommand.empty()) cfg.subcommand = subcommand;

  std::istringstream in(file_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::Parse,
            file_name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(known_keys().count(key) == 1, ErrorKind::Parse,
            file_name + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    try {
      apply_key(cfg, key, value);
    } catch (const Error& e) {
      fail(ErrorKind::Parse, file_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (const auto& [key, value] : flag_overrides) apply_key(cfg, key, value);
  if (!subcommand.empty()) cfg.subcommand = subcommand;
  validate(cfg);
  return cfg;
}

namespace {

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string order2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string render_report(const ConvergenceReport& report, const std::string& format,
                          bool timing) {
  std::ostringstream os;
  if (format == "csv") {
    os << "level,step,err_l2,order,seconds\n";
    for (const ReportRow& row : report.rows) {
      os << row.level << ',' << g17(row.step) << ',' << g17(row.err) << ',';
      if (row.order) os << order2(*row.order);
      os << ',' << g17(timing ? row.seconds : 0.0) << '\n';
    }
    return os.str();
  }
  require(format == "md", ErrorKind::Parse, "render_report: format must be csv or md");
  os << "### " << report.problem << " / " << report.scheme << " / " << report.alpha_name
     << (report.axis == Axis::Time ? " (time refinement)" : " (space refinement)") << "\n\n";
  os << "| " << (report.axis == Axis::Time ? "tau" : "dx") << " | Err | Order |\n";
  os << "| --- | --- | --- |\n";
  for (const ReportRow& row : report.rows) {
    os << "| " << g6(row.step) << " | " << g6(row.err) << " | "
       << (row.order ? order2(*row.order) : std::string("---")) << " |\n";
  }
  return os.str();
}

void emit_report(const ConvergenceReport& report, const std::string& format,
                 const std::string& path, bool timing) {
  const std::string text = render_report(report, format, timing);
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot open output file '" + path + "'");
  out << text;
  require(static_cast<bool>(out), ErrorKind::Io, "failed writing output file '" + path + "'");
}

}  // namespace votfmid::cli
