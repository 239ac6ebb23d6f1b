#pragma once

#include <functional>

#include "votfmid/grid2d.hpp"

namespace votfmid {

/// Uniform rectangular mesh with the collocation abscissae of the quadratic
/// spline method: cell midpoints plus the two domain endpoints per direction.
/// Index i runs 0..Mx+1 with xi_0 = x_lo, xi_{Mx+1} = x_hi; interior indices
/// are midpoints. The boundary index set holds every (i,j) with i or j on an
/// endpoint (corners included).
struct SpaceGrid {
  double x_lo, x_hi, y_lo, y_hi;
  int mx, my;
  double dx, dy;

  SpaceGrid(double x_lo_, double x_hi_, double y_lo_, double y_hi_, int mx_, int my_);
  static SpaceGrid unit_square(int mx_, int my_) { return {0.0, 1.0, 0.0, 1.0, mx_, my_}; }

  int nx() const { return mx + 2; }
  int ny() const { return my + 2; }
  std::size_t dof_count() const { return static_cast<std::size_t>(nx()) * ny(); }

  double colloc_x(int i) const {
    if (i == 0) return x_lo;
    if (i == mx + 1) return x_hi;
    return x_lo + (i - 0.5) * dx;
  }
  double colloc_y(int j) const {
    if (j == 0) return y_lo;
    if (j == my + 1) return y_hi;
    return y_lo + (j - 0.5) * dy;
  }
  bool on_boundary(int i, int j) const {
    return i == 0 || i == mx + 1 || j == 0 || j == my + 1;
  }

  Grid2d zeros() const { return Grid2d(nx(), ny()); }
  Grid2d sample(const std::function<double(double, double)>& f) const;
};

}  // namespace votfmid
