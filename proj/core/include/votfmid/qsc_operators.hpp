#pragma once

#include <vector>

#include "votfmid/space_grid.hpp"

namespace votfmid {

// ---------------------------------------------------------------------------
// Quadratic B-spline basis at collocation points.
//
// basis_value(j, i, m) returns phi_j(xi_i) for the m-cell basis on a unit
// mesh (the value is mesh-independent): interior rows follow the
// (1/8, 6/8, 1/8) pattern, the two endpoint rows the (4/8, 4/8) pattern.
// basis_second(j, i, dx, m) returns phi_j''(xi_i), defined for interior
// abscissae i = 1..m only (the scheme never uses second derivatives at the
// endpoints, where the quadratic spline's second derivative jumps).
// ---------------------------------------------------------------------------
double basis_value(int j, int i, int m);
double basis_second(int j, int i, double dx, int m);

// ---------------------------------------------------------------------------
// Collocation stencil operators, applied along one direction of a field.
// All take input and output of shape (Mx+2) x (My+2); input and output must
// be distinct objects.
// ---------------------------------------------------------------------------

/// Spline-value stencil: rows are the basis values at the collocation
/// abscissae ((c_{k-1} + 6 c_k + c_{k+1})/8 inside, (4 c + 4 c)/8 at the two
/// endpoint rows).
void apply_value_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out);
void apply_value_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out);

/// Second-derivative stencil (c_{k-1} - 2 c_k + c_{k+1})/dx^2 on interior
/// rows; endpoint rows yield 0.
void apply_second_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out);
void apply_second_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out);

/// Backward difference (c_k - c_{k-1})/dx for k = 1..Mx+1; row 0 is set to 0
/// and takes no part in the seminorms.
void apply_diff_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out);
void apply_diff_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out);

/// Fourth-difference accuracy-boost stencil scaled by 1/(24 dx^2): interior
/// rows carry (1, -4, 6, -4, 1) and the four near-boundary rows the special
/// one-sided patterns; endpoint rows yield 0. Requires Mx >= 6.
void apply_fourth_x(const SpaceGrid& g, const Grid2d& in, Grid2d& out);
void apply_fourth_y(const SpaceGrid& g, const Grid2d& in, Grid2d& out);

/// out = value_x(value_y(in)): spline values at all collocation points.
void apply_value_xy(const SpaceGrid& g, const Grid2d& in, Grid2d& out);

// ---------------------------------------------------------------------------
// Dense 1D operator matrices ((m+2) x (m+2), row-major), used for assembly
// and for oracle comparisons.
// ---------------------------------------------------------------------------
std::vector<double> value_matrix_1d(int m);
std::vector<double> second_matrix_1d(int m, double dx);
std::vector<double> fourth_matrix_1d(int m, double dx);

// ---------------------------------------------------------------------------
// Interpolation and evaluation.
// ---------------------------------------------------------------------------

/// Solves value_x(value_y(c)) = w by tridiagonal line solves in each
/// direction; verifies the collocation residual to 1e-12 * max|w|.
Grid2d interpolate_dofs(const SpaceGrid& g, const Grid2d& w);

/// Evaluates the biquadratic spline with coefficients c at (x, y) inside the
/// closed rectangle (at most 3x3 basis functions contribute).
double eval_spline(const SpaceGrid& g, const Grid2d& c, double x, double y);

// ---------------------------------------------------------------------------
// Discrete inner product and norms over the collocation index box.
// ---------------------------------------------------------------------------
double inner_product(const SpaceGrid& g, const Grid2d& u, const Grid2d& v);
double l2_norm(const SpaceGrid& g, const Grid2d& u);
/// |u|_{1x} = sqrt(dx dy sum_{i=1..Mx+1} sum_j (diff_x u)^2), and the y analog.
double seminorm_1x(const SpaceGrid& g, const Grid2d& u);
double seminorm_1y(const SpaceGrid& g, const Grid2d& u);

}  // namespace votfmid
