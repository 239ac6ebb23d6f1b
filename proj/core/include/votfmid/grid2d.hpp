#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "votfmid/errors.hpp"

namespace votfmid {

/// Dense 2D field over the collocation/DOF index box, row-major in (i, j)
/// with i the x index (0..Mx+1) and j the y index (0..My+1).
///
/// Both spline degrees of freedom and collocation-point grid functions use
/// this layout; they always share the (Mx+2)x(My+2) shape.
struct Grid2d {
  int nx = 0, ny = 0;
  std::vector<double> v;

  Grid2d() = default;
  Grid2d(int nx_, int ny_, double fill = 0.0)
      : nx(nx_), ny(ny_), v(static_cast<std::size_t>(nx_) * ny_, fill) {}

  double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * ny + j]; }
  double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * ny + j]; }

  std::size_t size() const { return v.size(); }
  std::span<double> flat() { return v; }
  std::span<const double> flat() const { return v; }

  void set_zero() { std::fill(v.begin(), v.end(), 0.0); }

  bool all_finite() const {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

inline bool same_shape(const Grid2d& a, const Grid2d& b) {
  return a.nx == b.nx && a.ny == b.ny;
}

inline void require_shape(const Grid2d& a, const Grid2d& b, const char* what) {
  require(same_shape(a, b), ErrorKind::Usage, std::string(what) + ": shape mismatch");
}

/// out += s * a
inline void axpy(double s, const Grid2d& a, Grid2d& out) {
  require_shape(a, out, "axpy");
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) out.v[k] += s * a.v[k];
}

inline double max_abs_diff(const Grid2d& a, const Grid2d& b) {
  require_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.v[k] - b.v[k]));
  return m;
}

}  // namespace votfmid
