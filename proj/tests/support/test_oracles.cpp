#include "test_oracles.hpp"

#include <cmath>

namespace votfmid::testing {
namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 44);
}

double caputo_frozen(const std::function<double(double)>& dv, double alpha, double t, double tol) {
  if (t <= 0.0) return 0.0;
  // int_0^t (t-s)^(-alpha) dv(s) ds with u = t-s, then u = z^(1/(1-alpha)):
  // (1/(1-alpha)) int_0^{t^(1-alpha)} dv(t - z^(1/(1-alpha))) dz.
  const double p = 1.0 - alpha;
  auto g = [&](double z) { return dv(t - std::pow(z, 1.0 / p)); };
  return integrate(g, 0.0, std::pow(t, p), tol * p) / (p * std::tgamma(p));
}

double caputo_frozen_avg(const std::function<double(double)>& dv, double alpha, double t0,
                         double tau, double tol) {
  auto inner = [&](double t) { return caputo_frozen(dv, alpha, t, tol * 0.1); };
  return integrate(inner, t0, t0 + tau, tol * tau) / tau;
}

double caputo_variable(const std::function<double(double)>& dv,
                       const std::function<double(double)>& alpha_of_t, double t, double tol) {
  return caputo_frozen(dv, alpha_of_t(t), t, tol);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd to_eigen(const std::vector<double>& row_major, int n) {
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = row_major[static_cast<std::size_t>(i) * n + j];
  return out;
}

}  // namespace votfmid::testing
