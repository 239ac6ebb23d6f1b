#include "votfmid/fractional_time.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace votfmid {
namespace {

double power(double base, double expo) { return std::exp(expo * std::log(base)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double kernel_omega(double beta, double t) {
  require(t > 0.0, ErrorKind::Domain, "kernel_omega: t must be positive (singular kernel)");
  require(beta > 0.0 && beta < 1.0, ErrorKind::Domain, "kernel_omega: beta must lie in (0,1)");
  return power(t, -beta) / std::tgamma(1.0 - beta);
}

VariableOrder::VariableOrder(std::function<double(double)> fn, double horizon, std::string name)
    : fn_(std::move(fn)), horizon_(horizon), name_(std::move(name)) {
  require(horizon_ > 0.0, ErrorKind::Config, "VariableOrder: horizon must be positive");
  constexpr int kSamples = 100000;
  double lo = fn_(0.0), hi = lo;
  bool increasing = false;
  double prev = lo;
  for (int k = 1; k <= kSamples; ++k) {
    const double t = horizon_ * static_cast<double>(k) / kSamples;
    const double a = fn_(t);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    if (a > prev) increasing = true;
    prev = a;
  }
  require(lo > 0.0 && hi < 1.0, ErrorKind::Config,
          "VariableOrder '" + name_ + "': sampled order leaves (0,1): [" + fmt(lo) + ", " +
              fmt(hi) + "]");
  lower_ = lo;
  upper_ = hi;
  at_zero_ = fn_(0.0);
  if (increasing)
    warnings_.push_back("order '" + name_ +
                        "' is not monotonically decreasing; second-order theory hypotheses "
                        "do not apply (results are still computed)");
}

VariableOrder VariableOrder::preset(AlphaPreset which, double horizon) {
  using std::numbers::pi;
  switch (which) {
    case AlphaPreset::A0:
      return VariableOrder([](double t) { return 0.45 - 0.3 * t; }, horizon, "a0");
    case AlphaPreset::A1:
      return VariableOrder(
          [](double t) {
            return 0.4 + 0.5 * (1.0 - t) - std::sin(2.0 * pi * (1.0 - t)) / (4.0 * pi);
          },
          horizon, "a1");
    case AlphaPreset::A2:
      return VariableOrder([](double t) { return 0.8 - 0.5 * (1.0 - t); }, horizon, "a2");
    case AlphaPreset::A3:
      return VariableOrder(
          [](double t) { return std::abs(3.0 * (t - 0.5) * (t - 0.5) - 0.2) + 0.3; }, horizon,
          "a3");
  }
  fail(ErrorKind::Internal, "VariableOrder::preset: unknown preset");
}

VariableOrder VariableOrder::affine(double p, double q, double horizon) {
  std::ostringstream name;
  name << "affine:" << p << "," << q;
  return VariableOrder([p, q](double t) { return p + q * t; }, horizon, name.str());
}

VariableOrder VariableOrder::custom(std::function<double(double)> fn, double horizon,
                                    std::string name) {
  return VariableOrder(std::move(fn), horizon, std::move(name));
}

const char* preset_name(AlphaPreset which) {
  switch (which) {
    case AlphaPreset::A0: return "a0";
    case AlphaPreset::A1: return "a1";
    case AlphaPreset::A2: return "a2";
    case AlphaPreset::A3: return "a3";
  }
  return "?";
}

TimeGrid::TimeGrid(double horizon_, int levels_) : horizon(horizon_), levels(levels_) {
  require(horizon > 0.0, ErrorKind::Config, "TimeGrid: horizon must be positive");
  require(levels >= 0, ErrorKind::Config, "TimeGrid: level count must be nonnegative");
  tau = levels > 0 ? horizon / levels : horizon;
  if (tau > 1.0)
    warnings.push_back("time step " + fmt(tau) +
                       " exceeds 1; coefficient monotonicity is not guaranteed");
}

std::vector<double> midpoint_orders(const VariableOrder& vo, const TimeGrid& grid) {
  std::vector<double> out(static_cast<std::size_t>(grid.levels));
  for (int n = 1; n <= grid.levels; ++n) {
    const double a = vo(grid.midpoint(n));
    require(a > 0.0 && a < 1.0, ErrorKind::Config,
            "midpoint_orders: alpha(t_{n-1/2}) = " + fmt(a) + " outside (0,1) at level " +
                std::to_string(n));
    out[static_cast<std::size_t>(n) - 1] = a;
  }
  return out;
}

double l1plus_coeff(int j, double tau, double alpha_mid) {
  require(j >= 1, ErrorKind::Domain, "l1plus_coeff: index must be >= 1");
  require(tau > 0.0, ErrorKind::Domain, "l1plus_coeff: step must be positive");
  require(alpha_mid > 0.0 && alpha_mid < 1.0, ErrorKind::Domain,
          "l1plus_coeff: order must lie in (0,1)");
  const double scale = power(tau, -alpha_mid) / std::tgamma(3.0 - alpha_mid);
  if (j == 1) return scale;
  const double p = 2.0 - alpha_mid;
  const double hi = power(static_cast<double>(j), p);
  const double mid = power(static_cast<double>(j - 1), p);
  const double lo = j == 2 ? 0.0 : power(static_cast<double>(j - 2), p);
  return scale * (hi - 2.0 * mid + lo);
}

L1PlusRow l1plus_row(int level, double tau, double alpha_mid) {
  require(level >= 1, ErrorKind::Usage, "l1plus_row: level must be >= 1");
  L1PlusRow row;
  row.level = level;
  row.tau = tau;
  row.alpha_mid = alpha_mid;
  row.tau_warning = tau > 1.0;
  row.a.resize(static_cast<std::size_t>(level));
  row.b.resize(static_cast<std::size_t>(level));
  const double scale = power(tau, -alpha_mid) / std::tgamma(3.0 - alpha_mid);
  const double p = 2.0 - alpha_mid;
  double mid = 1.0, lo = 0.0;  // (j-1)^p, (j-2)^p rolling
  row.a[0] = scale;
  for (int j = 2; j <= level; ++j) {
    const double hi = power(static_cast<double>(j), p);
    row.a[static_cast<std::size_t>(j) - 1] = scale * (hi - 2.0 * mid + lo);
    lo = mid;
    mid = hi;
  }
  row.b[0] = 1.0 + tau * row.a[0];
  for (int j = 2; j <= level; ++j)
    row.b[static_cast<std::size_t>(j) - 1] = tau * row.a[static_cast<std::size_t>(j) - 1];

  // Coefficient inequalities; failures here mean the formulas above are wrong.
  for (int j = 1; j <= level; ++j)
    require(row.a[static_cast<std::size_t>(j) - 1] > 0.0, ErrorKind::Internal,
            "l1plus_row: nonpositive weight a_" + std::to_string(j));
  for (int j = 3; j <= level; ++j)
    require(row.a[static_cast<std::size_t>(j) - 2] > row.a[static_cast<std::size_t>(j) - 1],
            ErrorKind::Internal, "l1plus_row: a-weights not decreasing at index " + std::to_string(j));
  if (tau <= 1.0) {
    for (int j = 2; j <= level; ++j)
      require(row.b[static_cast<std::size_t>(j) - 2] > row.b[static_cast<std::size_t>(j) - 1],
              ErrorKind::Internal,
              "l1plus_row: b-weights not decreasing at index " + std::to_string(j));
  }
  if (level >= 2) {
    const double t_final = level * tau;
    const double bound = power(t_final, -alpha_mid) / std::tgamma(1.0 - alpha_mid);
    require(row.a.back() >= bound * (1.0 - 1e-12), ErrorKind::Internal,
            "l1plus_row: tail weight below its kernel lower bound");
  }
  return row;
}

double history_sum_direct(std::span<const double> values, const L1PlusRow& row) {
  require(static_cast<int>(values.size()) == row.level + 1, ErrorKind::Usage,
          "history_sum_direct: sequence length must equal level + 1");
  double acc = 0.0;
  for (int k = 1; k <= row.level; ++k)
    acc += row.a[static_cast<std::size_t>(row.level - k)] *
           (values[static_cast<std::size_t>(k)] - values[static_cast<std::size_t>(k) - 1]);
  return acc;
}

void history_sum_direct(std::span<const Grid2d> values, const L1PlusRow& row, Grid2d& out) {
  require(static_cast<int>(values.size()) == row.level + 1, ErrorKind::Usage,
          "history_sum_direct: sequence length must equal level + 1");
  for (const Grid2d& g : values) require_shape(g, out, "history_sum_direct");
  out.set_zero();
  for (int k = 1; k <= row.level; ++k) {
    const double w = row.a[static_cast<std::size_t>(row.level - k)];
    const Grid2d& cur = values[static_cast<std::size_t>(k)];
    const Grid2d& prev = values[static_cast<std::size_t>(k) - 1];
    for (std::size_t d = 0; d < out.size(); ++d) out.v[d] += w * (cur.v[d] - prev.v[d]);
  }
}

namespace {

// Adaptive Simpson with absolute tolerance; recursion depth capped.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) fail(ErrorKind::Oracle, "coeff_quadrature_oracle: quadrature did not converge");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double coeff_quadrature_oracle(int j, double tau, double alpha_mid, double tol) {
  require(tol >= 1e-12, ErrorKind::Usage, "coeff_quadrature_oracle: tolerance below 1e-12");
  require(j >= 1, ErrorKind::Domain, "coeff_quadrature_oracle: index must be >= 1");
  require(tau > 0.0 && alpha_mid > 0.0 && alpha_mid < 1.0, ErrorKind::Domain,
          "coeff_quadrature_oracle: bad step or order");
  const double gamma1 = std::tgamma(1.0 - alpha_mid);
  const double one_minus = 1.0 - alpha_mid;
  std::function<double(double)> outer;  // integrand in u = t - t_{n-1} over [0, tau]
  if (j == 1) {
    // Inner integral over s in [t_{n-1}, t] has the exact value
    // (t - t_{n-1})^(1-a) / ((1-a) Gamma(1-a)); the substitution removes the
    // kernel singularity and leaves only the outer direction to quadrature.
    outer = [=](double u) { return std::pow(u, one_minus) / (one_minus * gamma1); };
  } else {
    // Cell k = n-j+1: s in [t_{k-1}, t_k] with gap (t - s) in
    // [(j-2) tau + u, (j-1) tau + u]; the inner power-law integral is exact,
    // so adaptivity is spent on the outer direction where the closed form
    // does its second differencing.
    outer = [=](double u) {
      const double gap_lo = u + (j - 2) * tau;
      const double gap_hi = u + (j - 1) * tau;
      const double lo = gap_lo <= 0.0 ? 0.0 : std::pow(gap_lo, one_minus);
      return (std::pow(gap_hi, one_minus) - lo) / (one_minus * gamma1);
    };
  }
  const double magnitude = std::max(std::abs(outer(0.5 * tau)) * tau, 1e-300);
  const double integral = integrate(outer, 0.0, tau, tol * magnitude);
  return integral / (tau * tau);
}

}  // namespace votfmid
