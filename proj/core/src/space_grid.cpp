#include "votfmid/space_grid.hpp"

namespace votfmid {

SpaceGrid::SpaceGrid(double x_lo_, double x_hi_, double y_lo_, double y_hi_, int mx_, int my_)
    : x_lo(x_lo_), x_hi(x_hi_), y_lo(y_lo_), y_hi(y_hi_), mx(mx_), my(my_) {
  require(mx >= 2 && my >= 2, ErrorKind::Config, "SpaceGrid: need at least 2 cells per direction");
  require(x_hi > x_lo && y_hi > y_lo, ErrorKind::Config, "SpaceGrid: empty rectangle");
  dx = (x_hi - x_lo) / mx;
  dy = (y_hi - y_lo) / my;
}

Grid2d SpaceGrid::sample(const std::function<double(double, double)>& f) const {
  Grid2d out = zeros();
  for (int i = 0; i < nx(); ++i) {
    const double x = colloc_x(i);
    for (int j = 0; j < ny(); ++j) out(i, j) = f(x, colloc_y(j));
  }
  return out;
}

}  // namespace votfmid
