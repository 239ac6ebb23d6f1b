#include "votfmid/esa_fast.hpp"

#include <cmath>
#include <numbers>

#include "votfmid/parallel.hpp"

namespace votfmid {

EsaQuadrature esa_params(double alpha_lo, double alpha_hi, double eps, double horizon,
                         double tau) {
  require(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi < 1.0, ErrorKind::Domain,
          "esa_params: order bounds must satisfy 0 < lo <= hi < 1");
  require(eps > 0.0 && eps <= 1.0 / std::numbers::e, ErrorKind::Domain,
          "esa_params: accuracy must lie in (0, 1/e]");
  require(horizon > 0.0 && tau > 0.0 && tau < horizon, ErrorKind::Config,
          "esa_params: need 0 < tau < T");

  EsaQuadrature q;
  q.eps = eps;
  q.alpha_lo = alpha_lo;
  q.alpha_hi = alpha_hi;
  q.horizon = horizon;
  q.tau = tau;
  const double log_inv_eps = -std::log(eps);
  q.h = 2.0 * std::numbers::pi /
        (std::log(3.0) + alpha_hi * (-std::log(std::cos(1.0))) + log_inv_eps);
  q.n_lo = static_cast<int>(
      std::ceil((std::log(eps) + std::lgamma(1.0 + alpha_hi)) / (q.h * alpha_lo)));
  q.n_hi = static_cast<int>(std::floor(
      (std::log(horizon / tau) + std::log(log_inv_eps) + std::log(alpha_lo) + 0.5) / q.h));
  require(q.n_lo < q.n_hi, ErrorKind::Config,
          "esa_params: empty exponent range (time mesh too coarse or accuracy too loose)");
  q.lambda.resize(static_cast<std::size_t>(q.count()));
  for (int r = q.n_lo + 1; r <= q.n_hi; ++r)
    q.lambda[static_cast<std::size_t>(r - q.n_lo - 1)] = std::exp(r * q.h);
  return q;
}

std::vector<double> esa_weights(const EsaQuadrature& q, double alpha_mid) {
  require(alpha_mid >= q.alpha_lo && alpha_mid <= q.alpha_hi, ErrorKind::Domain,
          "esa_weights: order outside construction bounds");
  std::vector<double> w(static_cast<std::size_t>(q.count()));
  const double scale = q.h / std::tgamma(alpha_mid);
  for (int k = 0; k < q.count(); ++k)
    w[static_cast<std::size_t>(k)] = scale * std::exp(alpha_mid * (q.n_lo + 1 + k) * q.h);
  return w;
}

double esa_b_coeff(int level, int r_index, const EsaQuadrature& q) {
  require(level >= 3, ErrorKind::Usage, "esa_b_coeff: fast path starts at level 3");
  require(r_index >= 0 && r_index < q.count(), ErrorKind::Usage,
          "esa_b_coeff: exponent index out of range");
  const double lam = q.lambda[static_cast<std::size_t>(r_index)];
  const double x = lam * q.tau / q.horizon;
  // (T/lam) e^{-x} (1 - e^{-x}), with 1 - e^{-x} = -expm1(-x).
  return (q.horizon / lam) * std::exp(-x) * (-std::expm1(-x));
}

EsaHistoryState::EsaHistoryState(const EsaQuadrature& q, int nx, int ny) {
  require(nx >= 1 && ny >= 1, ErrorKind::Usage, "EsaHistoryState: empty field shape");
  fields_.assign(static_cast<std::size_t>(q.count()), Grid2d(nx, ny, 0.0));
  decay_.resize(static_cast<std::size_t>(q.count()));
  gain_.resize(static_cast<std::size_t>(q.count()));
  for (int k = 0; k < q.count(); ++k) {
    const double x = q.lambda[static_cast<std::size_t>(k)] * q.tau / q.horizon;
    decay_[static_cast<std::size_t>(k)] = std::exp(-x);
    gain_[static_cast<std::size_t>(k)] = -std::expm1(-x) / x;
  }
}

void EsaHistoryState::push(const EsaQuadrature& q, const Grid2d& delta) {
  require(q.count() == count(), ErrorKind::Usage, "EsaHistoryState::push: quadrature mismatch");
  require_shape(delta, fields_.front(), "EsaHistoryState::push");
  const int n = static_cast<int>(delta.size());
  const int nr = count();
  parallel_for(n, [&](int begin, int end) {
    for (int k = 0; k < nr; ++k) {
      Grid2d& f = fields_[static_cast<std::size_t>(k)];
      const double d = decay_[static_cast<std::size_t>(k)];
      const double g = gain_[static_cast<std::size_t>(k)];
      for (int e = begin; e < end; ++e)
        f.v[static_cast<std::size_t>(e)] =
            d * f.v[static_cast<std::size_t>(e)] + g * delta.v[static_cast<std::size_t>(e)];
    }
  });
  work_ += static_cast<std::uint64_t>(nr) * static_cast<std::uint64_t>(n);
  ++level_;
}

void EsaHistoryState::weighted_sum(std::span<const double> w, Grid2d& out) const {
  require(static_cast<int>(w.size()) == count(), ErrorKind::Usage,
          "EsaHistoryState::weighted_sum: weight count mismatch");
  require_shape(out, fields_.front(), "EsaHistoryState::weighted_sum");
  const int n = static_cast<int>(out.size());
  const int nr = count();
  parallel_for(n, [&](int begin, int end) {
    for (int e = begin; e < end; ++e) {
      double acc = 0.0;
      for (int k = 0; k < nr; ++k)
        acc += w[static_cast<std::size_t>(k)] *
               fields_[static_cast<std::size_t>(k)].v[static_cast<std::size_t>(e)];
      out.v[static_cast<std::size_t>(e)] = acc;
    }
  });
}

std::size_t EsaHistoryState::memory_doubles() const {
  return fields_.size() * (fields_.empty() ? 0 : fields_.front().size()) + decay_.size() +
         gain_.size();
}

namespace {

double fast_prefactor(const EsaQuadrature& q, double alpha_mid) {
  return std::pow(q.horizon, -alpha_mid) / (q.tau * std::tgamma(1.0 - alpha_mid));
}

}  // namespace

double history_sum_fast(const EsaHistoryState& state, const EsaQuadrature& q, double a1,
                        double a2, double v_nm2, double v_nm1, double v_n, double alpha_mid) {
  require(state.level() >= 3, ErrorKind::Usage, "history_sum_fast: fast path starts at level 3");
  const std::vector<double> w = esa_weights(q, alpha_mid);
  double tail = 0.0;
  for (int k = 0; k < q.count(); ++k)
    tail += w[static_cast<std::size_t>(k)] * esa_b_coeff(state.level(), k, q) *
            state.field(k)(0, 0);
  return a1 * (v_n - v_nm1) + a2 * (v_nm1 - v_nm2) + fast_prefactor(q, alpha_mid) * tail;
}

void history_sum_fast(const EsaHistoryState& state, const EsaQuadrature& q, double a1, double a2,
                      const Grid2d& v_nm2, const Grid2d& v_nm1, const Grid2d& v_n,
                      double alpha_mid, Grid2d& out) {
  require(state.level() >= 3, ErrorKind::Usage, "history_sum_fast: fast path starts at level 3");
  require_shape(v_n, out, "history_sum_fast");
  require_shape(v_nm1, out, "history_sum_fast");
  require_shape(v_nm2, out, "history_sum_fast");
  std::vector<double> w = esa_weights(q, alpha_mid);
  for (int k = 0; k < q.count(); ++k)
    w[static_cast<std::size_t>(k)] *= esa_b_coeff(state.level(), k, q);
  state.weighted_sum(w, out);
  const double pref = fast_prefactor(q, alpha_mid);
  for (std::size_t e = 0; e < out.size(); ++e)
    out.v[e] = a1 * (v_n.v[e] - v_nm1.v[e]) + a2 * (v_nm1.v[e] - v_nm2.v[e]) + pref * out.v[e];
}

}  // namespace votfmid
