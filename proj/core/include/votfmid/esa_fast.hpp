#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "votfmid/grid2d.hpp"

namespace votfmid {

/// Exponential-sum approximation of the rescaled kernel x^(-a) on
/// x in [tau/T, 1], valid for every order a in [alpha_lo, alpha_hi]:
///   x^(-a) ~= sum_r weight_r(a) * exp(-lambda_r x),   relative error <= eps.
///
/// Exponents lambda_r = exp(r h) for r = n_lo+1 .. n_hi are fixed at
/// construction; the weights depend on the order and are recomputed per time
/// level (see esa_weights).
struct EsaQuadrature {
  double eps = 0;
  double h = 0;
  int n_lo = 0;  // exclusive lower index
  int n_hi = 0;  // inclusive upper index
  double alpha_lo = 0, alpha_hi = 0;
  double horizon = 0, tau = 0;
  std::vector<double> lambda;  // lambda[k] = exp((n_lo+1+k) h), strictly increasing

  int count() const { return n_hi - n_lo; }
};

/// Chooses the mesh parameter and index bounds from the accuracy target and
/// the order bounds. Requires 0 < eps <= 1/e and tau < T; throws
/// ErrorKind::Config when the resulting index range is empty (mesh too coarse
/// or eps too loose).
EsaQuadrature esa_params(double alpha_lo, double alpha_hi, double eps, double horizon,
                         double tau);

/// Order-dependent quadrature weights h * exp(a r h) / Gamma(a), one per
/// exponent. The order must lie within the construction bounds.
std::vector<double> esa_weights(const EsaQuadrature& q, double alpha_mid);

/// Time-integrated exponential factor
///   int_{t_{n-1}}^{t_n} exp(-lambda_r (t - t_{n-2}) / T) dt
///   = (T/lambda_r) (exp(-lambda_r tau/T) - exp(-2 lambda_r tau/T)),
/// evaluated in an expm1 form that stays accurate for small lambda tau / T.
/// Level-independent on a uniform grid; the level argument only checks the
/// n >= 3 precondition of the fast path.
double esa_b_coeff(int level, int r_index, const EsaQuadrature& q);

/// Streaming history fields V^(n,r), one field per exponent. Starts at level
/// 2 with V = 0 and advances one level per push with the recurrence
///   V^(n,r) = exp(-lambda_r tau/T) V^(n-1,r)
///           + (T/(lambda_r tau)) (1 - exp(-lambda_r tau/T)) (v^{n-2} - v^{n-3}).
class EsaHistoryState {
public:
  EsaHistoryState(const EsaQuadrature& q, int nx, int ny);

  int level() const { return level_; }
  int count() const { return static_cast<int>(fields_.size()); }
  const Grid2d& field(int r_index) const { return fields_[static_cast<std::size_t>(r_index)]; }

  /// Advances level n-1 -> n with delta = v^{n-2} - v^{n-3}.
  void push(const EsaQuadrature& q, const Grid2d& delta);

  /// out = sum_r w[r] * V^(n,r), accumulated in fixed r order per entry.
  void weighted_sum(std::span<const double> w, Grid2d& out) const;

  /// Number of doubles held by the state; independent of the level count.
  std::size_t memory_doubles() const;

  /// Work counter: one unit per (exponent, entry) update or sum term.
  std::uint64_t work_units() const { return work_; }

private:
  int level_ = 2;
  std::vector<Grid2d> fields_;
  std::vector<double> decay_;  // exp(-lambda_r tau/T)
  std::vector<double> gain_;   // (T/(lambda_r tau)) (1 - exp(-lambda_r tau/T))
  std::uint64_t work_ = 0;
};

/// Fast evaluation of the averaged fractional derivative at level n >= 3:
/// the two local terms plus the exponential-sum history,
///   a1 (v^n - v^{n-1}) + a2 (v^{n-1} - v^{n-2})
///   + T^(-a)/(tau Gamma(1-a)) sum_r weight_r b_r V^(n,r).
/// The state must already be advanced to level n.
double history_sum_fast(const EsaHistoryState& state, const EsaQuadrature& q, double a1,
                        double a2, double v_nm2, double v_nm1, double v_n, double alpha_mid);

/// Elementwise variant for fields.
void history_sum_fast(const EsaHistoryState& state, const EsaQuadrature& q, double a1, double a2,
                      const Grid2d& v_nm2, const Grid2d& v_nm1, const Grid2d& v_n,
                      double alpha_mid, Grid2d& out);

}  // namespace votfmid
