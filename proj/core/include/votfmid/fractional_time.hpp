#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "votfmid/grid2d.hpp"

namespace votfmid {

/// Singular power-law kernel t^(-beta) / Gamma(1 - beta) for beta in (0,1).
double kernel_omega(double beta, double t);

enum class AlphaPreset { A0, A1, A2, A3 };

/// Time-dependent fractional order alpha(t) on [0, T].
///
/// Construction samples alpha densely (1e5 uniform points plus endpoints) to
/// cache the bounds alpha_lo = inf alpha, alpha_hi = sup alpha and to verify
/// 0 < alpha_lo <= alpha_hi < 1. A positive sampled slope is recorded as a
/// warning (the monotone-decay hypothesis of the second-order theory fails),
/// not an error.
class VariableOrder {
public:
  static VariableOrder preset(AlphaPreset which, double horizon);
  /// alpha(t) = p + q * t
  static VariableOrder affine(double p, double q, double horizon);
  static VariableOrder custom(std::function<double(double)> fn, double horizon,
                              std::string name = "custom");

  double operator()(double t) const { return fn_(t); }
  double lower() const { return lower_; }     // alpha_*
  double upper() const { return upper_; }     // alpha^*
  double at_zero() const { return at_zero_; } // alpha(0)
  double horizon() const { return horizon_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  VariableOrder(std::function<double(double)> fn, double horizon, std::string name);

  std::function<double(double)> fn_;
  double horizon_;
  std::string name_;
  double lower_ = 0, upper_ = 0, at_zero_ = 0;
  std::vector<std::string> warnings_;
};

const char* preset_name(AlphaPreset which);

/// Uniform time grid t_n = n * tau, n = 0..levels, with tau = horizon/levels.
struct TimeGrid {
  TimeGrid(double horizon, int levels);

  double horizon;
  int levels;
  double tau;
  std::vector<std::string> warnings;  // tau > 1 weakens the coefficient monotonicity lemma

  double node(int n) const { return n * tau; }
  double midpoint(int n) const { return (n - 0.5) * tau; }  // t_{n-1/2}, n >= 1
};

/// alpha evaluated at the midpoints t_{n-1/2}, n = 1..levels.
std::vector<double> midpoint_orders(const VariableOrder& vo, const TimeGrid& grid);

/// Closed-form quadrature weight of the averaged-L1 discretization:
///   j = 1:  tau^(-a) / Gamma(3-a)
///   j >= 2: tau^(-a)/Gamma(3-a) * [j^(2-a) - 2(j-1)^(2-a) + (j-2)^(2-a)]
double l1plus_coeff(int j, double tau, double alpha_mid);

/// One time level's quadrature weights. a[j-1] holds a_j for j = 1..level;
/// b[0] = 1 + tau*a_1 and b[j-1] = tau*a_j for j >= 2 (the scheme-side
/// coefficients that absorb the first-order time derivative).
struct L1PlusRow {
  int level = 0;
  double tau = 0;
  double alpha_mid = 0;
  std::vector<double> a;
  std::vector<double> b;
  bool tau_warning = false;  // tau > 1: b-monotonicity not guaranteed
};

/// Builds a row and checks the coefficient inequalities (positivity, a-decay
/// from index 2, b-decay when tau <= 1, and the a_n lower bound). A violation
/// is an internal error: it would indicate a formula bug, not bad input.
L1PlusRow l1plus_row(int level, double tau, double alpha_mid);

/// Averaged fractional-derivative value
///   sum_{k=1..n} a_{n-k+1} (v^k - v^{k-1})
/// for a scalar sequence v^0..v^n matching the row level.
double history_sum_direct(std::span<const double> values, const L1PlusRow& row);

/// Elementwise variant for a sequence of fields.
void history_sum_direct(std::span<const Grid2d> values, const L1PlusRow& row, Grid2d& out);

/// Independent oracle for l1plus_coeff: adaptive quadrature of the defining
/// double integral (1/tau^2) int int kernel_omega over the coefficient cell.
/// On the j = 1 cell the inner integral is reduced analytically, which removes
/// the kernel singularity; elsewhere both directions are integrated
/// adaptively. Throws ErrorKind::Oracle if the requested tolerance cannot be
/// met.
double coeff_quadrature_oracle(int j, double tau, double alpha_mid, double tol);

}  // namespace votfmid
