#include "votfmid/qsc_operators.hpp"

#include <cmath>

#include "votfmid/linalg_band.hpp"

namespace votfmid {

double basis_value(int j, int i, int m) {
  require(i >= 0 && i <= m + 1 && j >= 0 && j <= m + 1, ErrorKind::Usage,
          "basis_value: index out of range");
  if (i == 0) return j == 0 || j == 1 ? 4.0 / 8.0 : 0.0;
  if (i == m + 1) return j == m || j == m + 1 ? 4.0 / 8.0 : 0.0;
  if (i == j) return 6.0 / 8.0;
  if (std::abs(i - j) == 1) return 1.0 / 8.0;
  return 0.0;
}

double basis_second(int j, int i, double dx, int m) {
  require(i >= 1 && i <= m && j >= 0 && j <= m + 1, ErrorKind::Usage,
          "basis_second: defined at interior abscissae only");
  const double s = 1.0 / (dx * dx);
  if (i == j) return -2.0 * s;
  if (std::abs(i - j) == 1) return s;
  return 0.0;
}

namespace {

void check_shapes(const SpaceGrid& g, const Grid2d& in, Grid2d& out, const char* what) {
  require(in.nx == g.nx() && in.ny == g.ny(), ErrorKind::Usage,
          std::string(what) + ": input shape mismatch");
  if (!same_shape(out, in)) out = Grid2d(in.nx, in.ny);
  require(&in != &out, ErrorKind::Usage, std::string(what) + ": in-place application");
}

}  // namespace

void apply_value_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_value_x");
  const int nx = g.nx(), ny = g.ny();
  for (int j = 0; j < ny; ++j) {
    out(0, j) = 0.5 * (in(0, j) + in(1, j));
    out(nx - 1, j) = 0.5 * (in(nx - 2, j) + in(nx - 1, j));
  }
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 0; j < ny; ++j)
      out(i, j) = 0.125 * (in(i - 1, j) + 6.0 * in(i, j) + in(i + 1, j));
}

void apply_value_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_value_y");
  const int nx = g.nx(), ny = g.ny();
  for (int i = 0; i < nx; ++i) {
    out(i, 0) = 0.5 * (in(i, 0) + in(i, 1));
    for (int j = 1; j < ny - 1; ++j)
      out(i, j) = 0.125 * (in(i, j - 1) + 6.0 * in(i, j) + in(i, j + 1));
    out(i, ny - 1) = 0.5 * (in(i, ny - 2) + in(i, ny - 1));
  }
}

void apply_second_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_second_x");
  const int nx = g.nx(), ny = g.ny();
  const double s = 1.0 / (g.dx * g.dx);
  for (int j = 0; j < ny; ++j) {
    out(0, j) = 0.0;
    out(nx - 1, j) = 0.0;
  }
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 0; j < ny; ++j)
      out(i, j) = s * (in(i - 1, j) - 2.0 * in(i, j) + in(i + 1, j));
}

void apply_second_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_second_y");
  const int nx = g.nx(), ny = g.ny();
  const double s = 1.0 / (g.dy * g.dy);
  for (int i = 0; i < nx; ++i) {
    out(i, 0) = 0.0;
    for (int j = 1; j < ny - 1; ++j)
      out(i, j) = s * (in(i, j - 1) - 2.0 * in(i, j) + in(i, j + 1));
    out(i, ny - 1) = 0.0;
  }
}

void apply_diff_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_diff_x");
  const int nx = g.nx(), ny = g.ny();
  const double s = 1.0 / g.dx;
  for (int j = 0; j < ny; ++j) out(0, j) = 0.0;
  for (int i = 1; i < nx; ++i)
    for (int j = 0; j < ny; ++j) out(i, j) = s * (in(i, j) - in(i - 1, j));
}

void apply_diff_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  check_shapes(g, in, out, "apply_diff_y");
  const int nx = g.nx(), ny = g.ny();
  const double s = 1.0 / g.dy;
  for (int i = 0; i < nx; ++i) {
    out(i, 0) = 0.0;
    for (int j = 1; j < ny; ++j) out(i, j) = s * (in(i, j) - in(i, j - 1));
  }
}

void apply_fourth_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  require(g.mx >= 6, ErrorKind::Config, "apply_fourth_x: needs Mx >= 6");
  check_shapes(g, in, out, "apply_fourth_x");
  const int nx = g.nx(), ny = g.ny();
  const int m = g.mx;
  const double s = 1.0 / (24.0 * g.dx * g.dx);
  for (int j = 0; j < ny; ++j) {
    out(0, j) = 0.0;
    out(nx - 1, j) = 0.0;
    out(1, j) = s * (-11.0 * in(1, j) + 16.0 * in(2, j) - 14.0 * in(3, j) + 6.0 * in(4, j) -
                     in(5, j));
    out(2, j) = s * (-5.0 * in(1, j) + 6.0 * in(2, j) - 4.0 * in(3, j) + in(4, j));
    out(m - 1, j) =
        s * (-5.0 * in(m, j) + 6.0 * in(m - 1, j) - 4.0 * in(m - 2, j) + in(m - 3, j));
    out(m, j) = s * (-11.0 * in(m, j) + 16.0 * in(m - 1, j) - 14.0 * in(m - 2, j) +
                     6.0 * in(m - 3, j) - in(m - 4, j));
  }
  for (int i = 3; i <= m - 2; ++i)
    for (int j = 0; j < ny; ++j)
      out(i, j) = s * (in(i - 2, j) - 4.0 * in(i - 1, j) + 6.0 * in(i, j) - 4.0 * in(i + 1, j) +
                       in(i + 2, j));
}

void apply_fourth_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  require(g.my >= 6, ErrorKind::Config, "apply_fourth_y: needs My >= 6");
  check_shapes(g, in, out, "apply_fourth_y");
  const int nx = g.nx();
  const int m = g.my;
  const double s = 1.0 / (24.0 * g.dy * g.dy);
  for (int i = 0; i < nx; ++i) {
    out(i, 0) = 0.0;
    out(i, m + 1) = 0.0;
    out(i, 1) = s * (-11.0 * in(i, 1) + 16.0 * in(i, 2) - 14.0 * in(i, 3) + 6.0 * in(i, 4) -
                     in(i, 5));
    out(i, 2) = s * (-5.0 * in(i, 1) + 6.0 * in(i, 2) - 4.0 * in(i, 3) + in(i, 4));
    out(i, m - 1) =
        s * (-5.0 * in(i, m) + 6.0 * in(i, m - 1) - 4.0 * in(i, m - 2) + in(i, m - 3));
    out(i, m) = s * (-11.0 * in(i, m) + 16.0 * in(i, m - 1) - 14.0 * in(i, m - 2) +
                     6.0 * in(i, m - 3) - in(i, m - 4));
    for (int j = 3; j <= m - 2; ++j)
      out(i, j) = s * (in(i, j - 2) - 4.0 * in(i, j - 1) + 6.0 * in(i, j) - 4.0 * in(i, j + 1) +
                       in(i, j + 2));
  }
}

void apply_value_xy(const SpaceGrid& g, const Grid2d& in, Grid2d& out) {
  Grid2d tmp;
  apply_value_y(g, in, tmp);
  apply_value_x(g, tmp, out);
}

std::vector<double> value_matrix_1d(int m) {
  const int n = m + 2;
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  at(0, 0) = at(0, 1) = 0.5;
  at(n - 1, n - 2) = at(n - 1, n - 1) = 0.5;
  for (int r = 1; r < n - 1; ++r) {
    at(r, r - 1) = 0.125;
    at(r, r) = 0.75;
    at(r, r + 1) = 0.125;
  }
  return a;
}

std::vector<double> second_matrix_1d(int m, double dx) {
  const int n = m + 2;
  const double s = 1.0 / (dx * dx);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  for (int r = 1; r < n - 1; ++r) {
    at(r, r - 1) = s;
    at(r, r) = -2.0 * s;
    at(r, r + 1) = s;
  }
  return a;
}

std::vector<double> fourth_matrix_1d(int m, double dx) {
  require(m >= 6, ErrorKind::Config, "fourth_matrix_1d: needs m >= 6");
  const int n = m + 2;
  const double s = 1.0 / (24.0 * dx * dx);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  at(1, 1) = -11.0 * s;
  at(1, 2) = 16.0 * s;
  at(1, 3) = -14.0 * s;
  at(1, 4) = 6.0 * s;
  at(1, 5) = -s;
  at(2, 1) = -5.0 * s;
  at(2, 2) = 6.0 * s;
  at(2, 3) = -4.0 * s;
  at(2, 4) = s;
  for (int r = 3; r <= m - 2; ++r) {
    at(r, r - 2) = s;
    at(r, r - 1) = -4.0 * s;
    at(r, r) = 6.0 * s;
    at(r, r + 1) = -4.0 * s;
    at(r, r + 2) = s;
  }
  at(m - 1, m) = -5.0 * s;
  at(m - 1, m - 1) = 6.0 * s;
  at(m - 1, m - 2) = -4.0 * s;
  at(m - 1, m - 3) = s;
  at(m, m) = -11.0 * s;
  at(m, m - 1) = 16.0 * s;
  at(m, m - 2) = -14.0 * s;
  at(m, m - 3) = 6.0 * s;
  at(m, m - 4) = -s;
  return a;
}

namespace {

TridiagonalSystem value_tridiagonal(int m) {
  const int n = m + 2;
  TridiagonalSystem sys;
  sys.lower.assign(static_cast<std::size_t>(n) - 1, 0.125);
  sys.diag.assign(static_cast<std::size_t>(n), 0.75);
  sys.upper.assign(static_cast<std::size_t>(n) - 1, 0.125);
  sys.diag.front() = sys.diag.back() = 0.5;
  sys.upper.front() = 0.5;
  sys.lower.back() = 0.5;
  return sys;
}

}  // namespace

Grid2d interpolate_dofs(const SpaceGrid& g, const Grid2d& w) {
  require(w.nx == g.nx() && w.ny == g.ny(), ErrorKind::Usage,
          "interpolate_dofs: value shape mismatch");
  require(w.all_finite(), ErrorKind::Usage, "interpolate_dofs: values must be finite");
  TridiagonalSystem sx = value_tridiagonal(g.mx);
  sx.factor();
  TridiagonalSystem sy = value_tridiagonal(g.my);
  sy.factor();

  Grid2d c(w.nx, w.ny);
  std::vector<double> line(static_cast<std::size_t>(std::max(w.nx, w.ny)));
  // x-direction solves per j, then y-direction solves per i.
  for (int j = 0; j < w.ny; ++j) {
    for (int i = 0; i < w.nx; ++i) line[static_cast<std::size_t>(i)] = w(i, j);
    sx.solve({line.data(), static_cast<std::size_t>(w.nx)});
    for (int i = 0; i < w.nx; ++i) c(i, j) = line[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < w.nx; ++i) {
    for (int j = 0; j < w.ny; ++j) line[static_cast<std::size_t>(j)] = c(i, j);
    sy.solve({line.data(), static_cast<std::size_t>(w.ny)});
    for (int j = 0; j < w.ny; ++j) c(i, j) = line[static_cast<std::size_t>(j)];
  }

  Grid2d check;
  apply_value_xy(g, c, check);
  const double scale = std::max(w.max_abs(), 1.0);
  require(max_abs_diff(check, w) <= 1e-12 * scale, ErrorKind::Internal,
          "interpolate_dofs: collocation residual above tolerance");
  return c;
}

namespace {

// Three-piece quadratic base function on [0, 3].
double base_quadratic(double u) {
  if (u <= 0.0 || u >= 3.0) return 0.0;
  if (u <= 1.0) return 0.5 * u * u;
  if (u <= 2.0) {
    const double w = u - 1.0;
    return 0.5 * (-2.0 * w * w + 2.0 * w + 1.0);
  }
  const double w = 3.0 - u;
  return 0.5 * w * w;
}

}  // namespace

double eval_spline(const SpaceGrid& g, const Grid2d& c, double x, double y) {
  require(c.nx == g.nx() && c.ny == g.ny(), ErrorKind::Usage, "eval_spline: shape mismatch");
  const double pad_x = 1e-12 * (g.x_hi - g.x_lo), pad_y = 1e-12 * (g.y_hi - g.y_lo);
  require(x >= g.x_lo - pad_x && x <= g.x_hi + pad_x && y >= g.y_lo - pad_y &&
              y <= g.y_hi + pad_y,
          ErrorKind::Usage, "eval_spline: point outside the domain");
  const double tx = std::clamp((x - g.x_lo) / g.dx, 0.0, static_cast<double>(g.mx));
  const double ty = std::clamp((y - g.y_lo) / g.dy, 0.0, static_cast<double>(g.my));
  const int cx = std::min(static_cast<int>(tx), g.mx - 1);
  const int cy = std::min(static_cast<int>(ty), g.my - 1);
  double wx[3], wy[3];
  for (int q = 0; q < 3; ++q) {
    wx[q] = base_quadratic(tx - (cx + q) + 2.0);
    wy[q] = base_quadratic(ty - (cy + q) + 2.0);
  }
  double acc = 0.0;
  for (int q = 0; q < 3; ++q)
    for (int r = 0; r < 3; ++r) acc += c(cx + q, cy + r) * wx[q] * wy[r];
  return acc;
}

double inner_product(const SpaceGrid& g, const Grid2d& u, const Grid2d& v) {
  require(u.nx == g.nx() && u.ny == g.ny(), ErrorKind::Usage, "inner_product: shape mismatch");
  require_shape(u, v, "inner_product");
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += u.v[k] * v.v[k];
  return g.dx * g.dy * acc;
}

double l2_norm(const SpaceGrid& g, const Grid2d& u) {
  return std::sqrt(inner_product(g, u, u));
}

double seminorm_1x(const SpaceGrid& g, const Grid2d& u) {
  require(u.nx == g.nx() && u.ny == g.ny(), ErrorKind::Usage, "seminorm_1x: shape mismatch");
  const double s = 1.0 / g.dx;
  double acc = 0.0;
  for (int i = 1; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j) {
      const double d = s * (u(i, j) - u(i - 1, j));
      acc += d * d;
    }
  return std::sqrt(g.dx * g.dy * acc);
}

double seminorm_1y(const SpaceGrid& g, const Grid2d& u) {
  require(u.nx == g.nx() && u.ny == g.ny(), ErrorKind::Usage, "seminorm_1y: shape mismatch");
  const double s = 1.0 / g.dy;
  double acc = 0.0;
  for (int i = 0; i < u.nx; ++i)
    for (int j = 1; j < u.ny; ++j) {
      const double d = s * (u(i, j) - u(i, j - 1));
      acc += d * d;
    }
  return std::sqrt(g.dx * g.dy * acc);
}

}  // namespace votfmid
